use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Half-width of the uniform weight initialization interval.
pub const DEFAULT_INIT_RANGE: f64 = 0.5;

/// Hyperbolic-tangent sigmoid, `2 / (1 + e^{-2x}) - 1`.
#[inline]
pub fn tansig(x: f64) -> f64 {
    x.tanh()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerSizes {
    pub input: usize,
    pub hidden: usize,
    pub output: usize,
}

impl LayerSizes {
    /// 18 inputs, 30 hidden units, 16 outputs.
    pub const REFERENCE: LayerSizes = LayerSizes {
        input: 18,
        hidden: 30,
        output: 16,
    };

    pub fn new(input: usize, hidden: usize, output: usize) -> Result<Self> {
        if input == 0 || hidden == 0 || output == 0 {
            return Err(Error::arg(format!(
                "layer sizes must be positive, got {input}-{hidden}-{output}"
            )));
        }
        Ok(Self { input, hidden, output })
    }

    pub fn n_params(&self) -> usize {
        self.input * self.hidden + self.hidden + self.hidden * self.output + self.output
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub input: Vec<f64>,
    pub target: Vec<f64>,
}

impl Sample {
    pub fn new(input: Vec<f64>, target: Vec<f64>) -> Self {
        Self { input, target }
    }
}

/// Two-layer perceptron with tan-sigmoid units on both layers.
///
/// `hidden_weights` is `input x hidden` row-major (`w[j * hidden + i]` links
/// input `j` to hidden unit `i`); `output_weights` is `hidden x output`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mlp {
    sizes: LayerSizes,
    hidden_weights: Vec<f64>,
    hidden_biases: Vec<f64>,
    output_weights: Vec<f64>,
    output_biases: Vec<f64>,
    use_biases: bool,
}

/// Gradient of the loss, laid out like [`Mlp`].
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    pub hidden_weights: Vec<f64>,
    pub hidden_biases: Vec<f64>,
    pub output_weights: Vec<f64>,
    pub output_biases: Vec<f64>,
}

impl Gradient {
    fn zeros(s: LayerSizes) -> Self {
        Self {
            hidden_weights: vec![0.0; s.input * s.hidden],
            hidden_biases: vec![0.0; s.hidden],
            output_weights: vec![0.0; s.hidden * s.output],
            output_biases: vec![0.0; s.output],
        }
    }

    /// Flattened in [`Mlp::params`] order.
    pub fn flatten(&self) -> Vec<f64> {
        [
            &self.hidden_weights[..],
            &self.hidden_biases,
            &self.output_weights,
            &self.output_biases,
        ]
        .concat()
    }

    fn scale(&mut self, a: f64) {
        for v in self
            .hidden_weights
            .iter_mut()
            .chain(&mut self.hidden_biases)
            .chain(&mut self.output_weights)
            .chain(&mut self.output_biases)
        {
            *v *= a;
        }
    }
}

struct Scratch {
    hidden: Vec<f64>,
    output: Vec<f64>,
    delta_out: Vec<f64>,
}

impl Scratch {
    fn new(s: LayerSizes) -> Self {
        Self {
            hidden: vec![0.0; s.hidden],
            output: vec![0.0; s.output],
            delta_out: vec![0.0; s.output],
        }
    }
}

fn check_finite(name: &str, v: &[f64]) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::arg(format!("{name} contains non-finite values")))
    }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}

impl Mlp {
    /// All weights and biases zero.
    pub fn zeros(sizes: LayerSizes, use_biases: bool) -> Self {
        Self {
            sizes,
            hidden_weights: vec![0.0; sizes.input * sizes.hidden],
            hidden_biases: vec![0.0; sizes.hidden],
            output_weights: vec![0.0; sizes.hidden * sizes.output],
            output_biases: vec![0.0; sizes.output],
            use_biases,
        }
    }

    /// Weights (and biases, when used) drawn uniformly from
    /// `[-init_range, init_range]` with a ChaCha8 generator.
    pub fn seeded(sizes: LayerSizes, seed: u64, init_range: f64, use_biases: bool) -> Result<Self> {
        // The sampled span 2 * init_range must stay finite.
        if !(0.0..=f64::MAX / 2.0).contains(&init_range) {
            return Err(Error::arg(format!("invalid init range {init_range:?}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |n: usize| -> Vec<f64> {
            (0..n)
                .map(|_| {
                    if init_range == 0.0 {
                        0.0
                    } else {
                        rng.random_range(-init_range..=init_range)
                    }
                })
                .collect()
        };
        let mut m = Self::zeros(sizes, use_biases);
        m.hidden_weights = draw(sizes.input * sizes.hidden);
        m.output_weights = draw(sizes.hidden * sizes.output);
        if use_biases {
            m.hidden_biases = draw(sizes.hidden);
            m.output_biases = draw(sizes.output);
        }
        Ok(m)
    }

    pub fn from_parts(
        sizes: LayerSizes,
        hidden_weights: Vec<f64>,
        hidden_biases: Vec<f64>,
        output_weights: Vec<f64>,
        output_biases: Vec<f64>,
        use_biases: bool,
    ) -> Result<Self> {
        check_len(sizes.input * sizes.hidden, hidden_weights.len())?;
        check_len(sizes.hidden, hidden_biases.len())?;
        check_len(sizes.hidden * sizes.output, output_weights.len())?;
        check_len(sizes.output, output_biases.len())?;
        check_finite("hidden weights", &hidden_weights)?;
        check_finite("hidden biases", &hidden_biases)?;
        check_finite("output weights", &output_weights)?;
        check_finite("output biases", &output_biases)?;
        if !use_biases && hidden_biases.iter().chain(&output_biases).any(|b| *b != 0.0) {
            return Err(Error::arg("biases must be zero when disabled"));
        }
        Ok(Self {
            sizes,
            hidden_weights,
            hidden_biases,
            output_weights,
            output_biases,
            use_biases,
        })
    }

    pub fn sizes(&self) -> LayerSizes {
        self.sizes
    }

    pub fn use_biases(&self) -> bool {
        self.use_biases
    }

    pub fn hidden_weights(&self) -> &[f64] {
        &self.hidden_weights
    }

    pub fn hidden_biases(&self) -> &[f64] {
        &self.hidden_biases
    }

    pub fn output_weights(&self) -> &[f64] {
        &self.output_weights
    }

    pub fn output_biases(&self) -> &[f64] {
        &self.output_biases
    }

    /// All parameters: hidden weights, hidden biases, output weights,
    /// output biases.
    pub fn params(&self) -> Vec<f64> {
        [
            &self.hidden_weights[..],
            &self.hidden_biases,
            &self.output_weights,
            &self.output_biases,
        ]
        .concat()
    }

    pub fn set_params(&mut self, p: &[f64]) -> Result<()> {
        check_len(self.sizes.n_params(), p.len())?;
        check_finite("parameters", p)?;
        let s = self.sizes;
        let (hw, rest) = p.split_at(s.input * s.hidden);
        let (hb, rest) = rest.split_at(s.hidden);
        let (ow, ob) = rest.split_at(s.hidden * s.output);
        self.hidden_weights.copy_from_slice(hw);
        self.output_weights.copy_from_slice(ow);
        if self.use_biases {
            self.hidden_biases.copy_from_slice(hb);
            self.output_biases.copy_from_slice(ob);
        }
        Ok(())
    }

    fn check_sample(&self, x: &[f64], d: Option<&[f64]>) -> Result<()> {
        check_len(self.sizes.input, x.len())?;
        if let Some(d) = d {
            check_len(self.sizes.output, d.len())?;
            check_finite("target", d)?;
        }
        if x.iter().any(|v| !(-1.0..=1.0).contains(v)) {
            return Err(Error::arg("network inputs must lie in [-1, 1]"));
        }
        Ok(())
    }

    fn forward_into(&self, x: &[f64], s: &mut Scratch) {
        let LayerSizes { input, hidden, output } = self.sizes;
        s.hidden.copy_from_slice(&self.hidden_biases);
        for (j, xj) in x.iter().enumerate().take(input) {
            let row = &self.hidden_weights[j * hidden..(j + 1) * hidden];
            for (h, w) in s.hidden.iter_mut().zip(row) {
                *h += w * xj;
            }
        }
        for h in &mut s.hidden {
            *h = tansig(*h);
        }
        s.output.copy_from_slice(&self.output_biases);
        for (i, hi) in s.hidden.iter().enumerate() {
            let row = &self.output_weights[i * output..(i + 1) * output];
            for (y, w) in s.output.iter_mut().zip(row) {
                *y += w * hi;
            }
        }
        for y in &mut s.output {
            *y = tansig(*y);
        }
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_sample(x, None)?;
        let mut s = Scratch::new(self.sizes);
        self.forward_into(x, &mut s);
        Ok(s.output)
    }

    /// Mean over patterns of `0.5 * sum_k (y_k - d_k)^2`.
    pub fn mse(&self, set: &[Sample]) -> Result<f64> {
        if set.is_empty() {
            return Err(Error::arg("empty pattern set"));
        }
        let mut s = Scratch::new(self.sizes);
        let mut total = 0.0;
        for p in set {
            self.check_sample(&p.input, Some(&p.target))?;
            self.forward_into(&p.input, &mut s);
            total += 0.5 * s.output.iter().zip(&p.target).map(|(y, d)| (y - d) * (y - d)).sum::<f64>();
        }
        Ok(total / set.len() as f64)
    }

    /// Accumulate the gradient of one pattern's loss into `g`.
    fn accumulate(&self, p: &Sample, s: &mut Scratch, g: &mut Gradient) {
        let LayerSizes { hidden, output, .. } = self.sizes;
        self.forward_into(&p.input, s);
        for k in 0..output {
            let y = s.output[k];
            s.delta_out[k] = (y - p.target[k]) * (1.0 - y * y);
        }
        for i in 0..hidden {
            let hi = s.hidden[i];
            let row = &self.output_weights[i * output..(i + 1) * output];
            let grow = &mut g.output_weights[i * output..(i + 1) * output];
            let mut back = 0.0;
            for k in 0..output {
                grow[k] += s.delta_out[k] * hi;
                back += row[k] * s.delta_out[k];
            }
            let dh = back * (1.0 - hi * hi);
            if self.use_biases {
                g.hidden_biases[i] += dh;
            }
            for (j, xj) in p.input.iter().enumerate() {
                g.hidden_weights[j * hidden + i] += dh * xj;
            }
        }
        if self.use_biases {
            for (gb, d) in g.output_biases.iter_mut().zip(&s.delta_out) {
                *gb += d;
            }
        }
    }

    /// Analytic gradient of [`Mlp::mse`] over `batch`. Bias entries are zero
    /// when biases are disabled.
    pub fn gradient(&self, batch: &[Sample]) -> Result<Gradient> {
        if batch.is_empty() {
            return Err(Error::arg("empty batch"));
        }
        let mut s = Scratch::new(self.sizes);
        let mut g = Gradient::zeros(self.sizes);
        for p in batch {
            self.check_sample(&p.input, Some(&p.target))?;
            self.accumulate(p, &mut s, &mut g);
        }
        g.scale(1.0 / batch.len() as f64);
        Ok(g)
    }

    fn apply(&mut self, g: &Gradient, eta: f64) {
        let pairs = [
            (&mut self.hidden_weights, &g.hidden_weights),
            (&mut self.output_weights, &g.output_weights),
            (&mut self.hidden_biases, &g.hidden_biases),
            (&mut self.output_biases, &g.output_biases),
        ];
        for (w, gw) in pairs {
            for (a, b) in w.iter_mut().zip(gw) {
                *a -= eta * b;
            }
        }
    }

    /// One gradient-descent step on the batch mean loss.
    pub fn backprop_step(&self, batch: &[Sample], eta: f64) -> Result<Mlp> {
        if !(eta.is_finite() && eta >= 0.0) {
            return Err(Error::arg(format!("learning rate must be non-negative, got {eta}")));
        }
        let g = self.gradient(batch)?;
        let mut next = self.clone();
        next.apply(&g, eta);
        Ok(next)
    }

    /// Online update on a single, already validated pattern.
    pub(crate) fn sgd_step_in_place(&mut self, p: &Sample, eta: f64, g: &mut Gradient) {
        for v in g
            .hidden_weights
            .iter_mut()
            .chain(&mut g.hidden_biases)
            .chain(&mut g.output_weights)
            .chain(&mut g.output_biases)
        {
            *v = 0.0;
        }
        let mut s = Scratch::new(self.sizes);
        self.accumulate(p, &mut s, g);
        self.apply(g, eta);
    }

    pub(crate) fn zero_gradient(&self) -> Gradient {
        Gradient::zeros(self.sizes)
    }

    pub(crate) fn validate_set(&self, set: &[Sample]) -> Result<()> {
        set.iter()
            .try_for_each(|p| self.check_sample(&p.input, Some(&p.target)))
    }

    pub fn is_finite(&self) -> bool {
        self.params().iter().all(|v| v.is_finite())
    }
}
