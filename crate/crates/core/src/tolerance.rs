/// Zero-test policy for floating-point pipelines. Exact scalars ignore it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolerancePolicy {
    /// Absolute zero threshold (in units of the tested matrix's scale when
    /// `relative` is set).
    pub zero_threshold: f64,
    /// Scale the threshold by `max(1, max |entry|)` of the matrix under test.
    pub relative: bool,
    /// Relative distance under which floating roots are merged into one
    /// repeated eigenvalue.
    pub cluster_eps: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            zero_threshold: 1e-9,
            relative: true,
            cluster_eps: 1e-6,
        }
    }
}

impl TolerancePolicy {
    pub fn new(zero_threshold: f64, relative: bool) -> Self {
        assert!(zero_threshold >= 0.0, "zero threshold must be nonnegative");
        Self {
            zero_threshold,
            relative,
            ..Self::default()
        }
    }

    pub fn with_cluster_eps(mut self, cluster_eps: f64) -> Self {
        assert!(cluster_eps >= 0.0, "cluster eps must be nonnegative");
        self.cluster_eps = cluster_eps;
        self
    }

    /// Threshold applied to entries of an object whose largest magnitude is `scale`.
    pub fn effective(&self, scale: f64) -> f64 {
        if self.relative {
            self.zero_threshold * scale.max(1.0)
        } else {
            self.zero_threshold
        }
    }
}
