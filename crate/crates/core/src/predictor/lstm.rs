use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{argmax, degenerate, Alphabet, NextChar, PredictorError};
use crate::memory::derive_rng;
use crate::scalar::Real;

fn sigmoid<T: Real>(x: T) -> T {
    T::one() / (T::one() + (-x).exp())
}

/// Single-layer LSTM over one-hot characters with a softmax readout.
///
/// All parameters live in one flat vector, laid out as
/// `wx[vocab][4·hidden]`, `wh[4·hidden][hidden]`, `b[4·hidden]`,
/// `wy[vocab][hidden]`, `by[vocab]`. Gate rows are ordered input, forget,
/// output, candidate. `wx` is stored by input character so a one-hot input
/// selects one contiguous row.
#[derive(Debug, Clone, PartialEq)]
pub struct LstmModel<T> {
    hidden: usize,
    vocab: usize,
    params: Vec<T>,
}

struct Step<T> {
    x: usize,
    i: Vec<T>,
    f: Vec<T>,
    o: Vec<T>,
    g: Vec<T>,
    c: Vec<T>,
    tanh_c: Vec<T>,
    h: Vec<T>,
    p: Vec<T>,
}

impl<T: Real> LstmModel<T> {
    pub const DEFAULT_HIDDEN: usize = 50;

    /// Uniform weights in ±1/√hidden, forget-gate bias 1, other biases 0.
    pub fn new(hidden: usize, seed: u64) -> Self {
        let vocab = Alphabet::SIZE;
        let mut model = Self {
            hidden,
            vocab,
            params: vec![T::zero(); Self::param_count(hidden, vocab)],
        };
        let scale = 1.0 / (hidden as f64).sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (b_start, wy_start, by_start) = (model.b_offset(), model.wy_offset(), model.by_offset());
        for (k, p) in model.params.iter_mut().enumerate() {
            let is_bias = (b_start..wy_start).contains(&k) || k >= by_start;
            if !is_bias {
                *p = T::lit(rng.gen_range(-scale..scale));
            }
        }
        for j in hidden..2 * hidden {
            model.params[b_start + j] = T::one();
        }
        model
    }

    pub fn param_count(hidden: usize, vocab: usize) -> usize {
        let g = 4 * hidden;
        vocab * g + g * hidden + g + vocab * hidden + vocab
    }

    pub fn hidden(&self) -> usize {
        self.hidden
    }

    pub fn vocab(&self) -> usize {
        self.vocab
    }

    pub fn params(&self) -> &[T] {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut [T] {
        &mut self.params
    }

    fn wh_offset(&self) -> usize {
        self.vocab * 4 * self.hidden
    }

    fn b_offset(&self) -> usize {
        self.wh_offset() + 4 * self.hidden * self.hidden
    }

    fn wy_offset(&self) -> usize {
        self.b_offset() + 4 * self.hidden
    }

    fn by_offset(&self) -> usize {
        self.wy_offset() + self.vocab * self.hidden
    }

    fn run(&self, seq: &[usize]) -> Vec<Step<T>> {
        let (hn, g4) = (self.hidden, 4 * self.hidden);
        let wh = &self.params[self.wh_offset()..self.b_offset()];
        let b = &self.params[self.b_offset()..self.wy_offset()];
        let wy = &self.params[self.wy_offset()..self.by_offset()];
        let by = &self.params[self.by_offset()..];
        let mut h_prev = vec![T::zero(); hn];
        let mut c_prev = vec![T::zero(); hn];
        let mut steps = Vec::with_capacity(seq.len());
        let mut z = vec![T::zero(); g4];
        for &x in seq {
            let wx = &self.params[x * g4..(x + 1) * g4];
            for r in 0..g4 {
                let row = &wh[r * hn..(r + 1) * hn];
                z[r] = wx[r] + b[r] + row.iter().zip(&h_prev).map(|(&w, &h)| w * h).sum::<T>();
            }
            let i: Vec<T> = z[..hn].iter().map(|&v| sigmoid(v)).collect();
            let f: Vec<T> = z[hn..2 * hn].iter().map(|&v| sigmoid(v)).collect();
            let o: Vec<T> = z[2 * hn..3 * hn].iter().map(|&v| sigmoid(v)).collect();
            let g: Vec<T> = z[3 * hn..].iter().map(|&v| v.tanh()).collect();
            let c: Vec<T> = (0..hn).map(|j| f[j] * c_prev[j] + i[j] * g[j]).collect();
            let tanh_c: Vec<T> = c.iter().map(|&v| v.tanh()).collect();
            let h: Vec<T> = (0..hn).map(|j| o[j] * tanh_c[j]).collect();
            let mut logits: Vec<T> = (0..self.vocab)
                .map(|v| by[v] + wy[v * hn..(v + 1) * hn].iter().zip(&h).map(|(&w, &x)| w * x).sum::<T>())
                .collect();
            let max = logits.iter().copied().fold(T::neg_infinity(), T::max);
            let mut total = T::zero();
            for l in logits.iter_mut() {
                *l = (*l - max).exp();
                total = total + *l;
            }
            for l in logits.iter_mut() {
                *l = *l / total;
            }
            h_prev.clone_from(&h);
            c_prev.clone_from(&c);
            steps.push(Step {
                x,
                i,
                f,
                o,
                g,
                c,
                tanh_c,
                h,
                p: logits,
            });
        }
        steps
    }

    /// Next-character distribution after each prefix `seq[..=t]`.
    pub fn forward(&self, seq: &[usize]) -> Vec<Vec<T>> {
        self.run(seq).into_iter().map(|s| s.p).collect()
    }

    /// Summed cross-entropy of predicting `seq[t + 1]` from `seq[..=t]`.
    pub fn loss(&self, seq: &[usize]) -> T {
        if seq.len() < 2 {
            return T::zero();
        }
        let steps = self.run(&seq[..seq.len() - 1]);
        steps.iter().zip(&seq[1..]).map(|(s, &y)| -s.p[y].ln()).sum()
    }

    /// Same loss as [`LstmModel::loss`]; adds its gradient into `grad`.
    pub fn loss_and_gradient(&self, seq: &[usize], grad: &mut [T]) -> T {
        assert_eq!(grad.len(), self.params.len());
        if seq.len() < 2 {
            return T::zero();
        }
        let (hn, g4) = (self.hidden, 4 * self.hidden);
        let (wh_o, b_o, wy_o, by_o) = (self.wh_offset(), self.b_offset(), self.wy_offset(), self.by_offset());
        let steps = self.run(&seq[..seq.len() - 1]);
        let targets = &seq[1..];
        let loss = steps.iter().zip(targets).map(|(s, &y)| -s.p[y].ln()).sum();

        let zeros = vec![T::zero(); hn];
        let mut dh_next = vec![T::zero(); hn];
        let mut dc_next = vec![T::zero(); hn];
        let mut dh = vec![T::zero(); hn];
        let mut dz = vec![T::zero(); g4];
        for t in (0..steps.len()).rev() {
            let s = &steps[t];
            let (h_prev, c_prev) = if t == 0 { (&zeros, &zeros) } else { (&steps[t - 1].h, &steps[t - 1].c) };

            dh.clone_from(&dh_next);
            for v in 0..self.vocab {
                let dy = if v == targets[t] { s.p[v] - T::one() } else { s.p[v] };
                grad[by_o + v] = grad[by_o + v] + dy;
                let row = wy_o + v * hn;
                for j in 0..hn {
                    grad[row + j] = grad[row + j] + dy * s.h[j];
                    dh[j] = dh[j] + dy * self.params[row + j];
                }
            }
            for j in 0..hn {
                let dc = dh[j] * s.o[j] * (T::one() - s.tanh_c[j] * s.tanh_c[j]) + dc_next[j];
                let (i, f, o, g) = (s.i[j], s.f[j], s.o[j], s.g[j]);
                dz[j] = dc * g * i * (T::one() - i);
                dz[hn + j] = dc * c_prev[j] * f * (T::one() - f);
                dz[2 * hn + j] = dh[j] * s.tanh_c[j] * o * (T::one() - o);
                dz[3 * hn + j] = dc * i * (T::one() - g * g);
                dc_next[j] = dc * f;
            }
            let wx_row = s.x * g4;
            dh_next.iter_mut().for_each(|d| *d = T::zero());
            for r in 0..g4 {
                let d = dz[r];
                grad[wx_row + r] = grad[wx_row + r] + d;
                grad[b_o + r] = grad[b_o + r] + d;
                let row = wh_o + r * hn;
                for k in 0..hn {
                    grad[row + k] = grad[row + k] + d * h_prev[k];
                    dh_next[k] = dh_next[k] + d * self.params[row + k];
                }
            }
        }
        loss
    }

    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint {
            alphabet: Alphabet::chars(),
            hidden: self.hidden,
            layout: ["wx", "wh", "b", "wy", "by"].map(String::from).to_vec(),
            params: self.params.iter().map(|p| p.as_f64()).collect(),
        }
    }

    pub fn from_checkpoint(cp: &Checkpoint) -> Result<Self, PredictorError> {
        if cp.alphabet != Alphabet::chars() {
            return Err(PredictorError::Checkpoint("alphabet differs from printable ASCII".into()));
        }
        let expected = Self::param_count(cp.hidden, Alphabet::SIZE);
        if cp.params.len() != expected {
            return Err(PredictorError::Checkpoint(format!(
                "hidden size {} needs {expected} parameters, found {}",
                cp.hidden,
                cp.params.len()
            )));
        }
        Ok(Self {
            hidden: cp.hidden,
            vocab: Alphabet::SIZE,
            params: cp.params.iter().map(|&p| T::lit(p)).collect(),
        })
    }
}

impl<T: Real> NextChar for LstmModel<T> {
    fn predict(&self, prefix: &[usize]) -> usize {
        match self.run(prefix).last() {
            Some(step) => argmax(&step.p),
            None => 0,
        }
    }
}

/// Portable model document: shapes plus the flat parameter array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub alphabet: String,
    pub hidden: usize,
    pub layout: Vec<String>,
    pub params: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub clip_norm: f64,
    pub hidden: usize,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            epochs: 100,
            learning_rate: 0.05,
            clip_norm: 5.0,
            hidden: LstmModel::<f64>::DEFAULT_HIDDEN,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrainOutcome<T> {
    pub model: LstmModel<T>,
    /// Mean cross-entropy per transition, one entry per epoch.
    pub curve: Vec<T>,
}

/// Plain SGD, one password per update, with the gradient norm clipped.
///
/// Every transition except each password's last one is trained on; the last
/// is what [`super::last_char_accuracy`] scores. Passwords are sorted before a
/// seeded shuffle each epoch, so the input order does not matter.
pub fn train<T: Real, S: AsRef<str>>(passwords: &[S], config: &TrainConfig) -> Result<TrainOutcome<T>, PredictorError> {
    if config.epochs == 0 {
        return Err(PredictorError::Config("epochs must be at least 1".into()));
    }
    if !(config.learning_rate > 0.0) || !(config.clip_norm > 0.0) || config.hidden == 0 {
        return Err(PredictorError::Config(
            "learning rate, clip norm and hidden size must be positive".into(),
        ));
    }
    let mut seqs: Vec<Vec<usize>> = passwords
        .iter()
        .map(|p| Alphabet::encode(p.as_ref()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|s| s.len() >= 3)
        .map(|mut s| {
            s.pop();
            s
        })
        .collect();
    if seqs.is_empty() {
        return Err(degenerate("no password has three or more characters to train on"));
    }
    seqs.sort();
    let transitions: usize = seqs.iter().map(|s| s.len() - 1).sum();

    let mut model = LstmModel::<T>::new(config.hidden, config.seed);
    let mut grad = vec![T::zero(); model.params.len()];
    let (lr, clip) = (T::lit(config.learning_rate), T::lit(config.clip_norm));
    let mut curve = Vec::with_capacity(config.epochs);
    let mut order: Vec<usize> = (0..seqs.len()).collect();
    for epoch in 0..config.epochs as u64 {
        order.shuffle(&mut derive_rng(config.seed, "epoch", &[&epoch.to_le_bytes()]));
        let mut total = T::zero();
        for &k in &order {
            grad.iter_mut().for_each(|g| *g = T::zero());
            total = total + model.loss_and_gradient(&seqs[k], &mut grad);
            let norm = grad.iter().map(|&g| g * g).sum::<T>().sqrt();
            let scale = if norm > clip { lr * clip / norm } else { lr };
            for (p, &g) in model.params.iter_mut().zip(&grad) {
                *p = *p - scale * g;
            }
        }
        curve.push(total / T::count(transitions));
    }
    Ok(TrainOutcome { model, curve })
}

pub fn write_curve_csv<T: Real, W: Write>(curve: &[T], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["epoch", "loss"])?;
    for (e, l) in curve.iter().enumerate() {
        w.write_record([(e + 1).to_string(), l.as_f64().to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradientCheck {
    pub max_relative_error: f64,
    pub max_analytic: f64,
    pub max_numeric: f64,
    pub checked: usize,
}

/// Relative errors below this denominator are measured against it instead,
/// so that parameters with near-zero gradient do not dominate.
pub const RELATIVE_ERROR_FLOOR: f64 = 1e-6;

/// Compares the backpropagated gradient with central differences on
/// `n_params` randomly chosen parameters.
pub fn gradient_check(model: &LstmModel<f64>, samples: &[Vec<usize>], n_params: usize, step: f64, seed: u64) -> GradientCheck {
    gradient_check_with(model, samples, n_params, step, seed, |_| {})
}

/// As [`gradient_check`], letting `tamper` alter the analytic gradient first.
pub fn gradient_check_with(
    model: &LstmModel<f64>,
    samples: &[Vec<usize>],
    n_params: usize,
    step: f64,
    seed: u64,
    tamper: impl FnOnce(&mut [f64]),
) -> GradientCheck {
    let mut grad = vec![0.0; model.params.len()];
    for s in samples {
        model.loss_and_gradient(s, &mut grad);
    }
    tamper(&mut grad);
    let total_loss = |m: &LstmModel<f64>| samples.iter().map(|s| m.loss(s)).sum::<f64>();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = rand::seq::index::sample(&mut rng, model.params.len(), n_params.min(model.params.len()));
    let mut probe = model.clone();
    let mut result = GradientCheck {
        max_relative_error: 0.0,
        max_analytic: 0.0,
        max_numeric: 0.0,
        checked: 0,
    };
    for k in picks {
        let original = probe.params[k];
        probe.params[k] = original + step;
        let up = total_loss(&probe);
        probe.params[k] = original - step;
        let down = total_loss(&probe);
        probe.params[k] = original;
        let numeric = (up - down) / (2.0 * step);
        let analytic = grad[k];
        let denom = analytic.abs().max(numeric.abs()).max(RELATIVE_ERROR_FLOOR);
        result.max_relative_error = result.max_relative_error.max((analytic - numeric).abs() / denom);
        result.max_analytic = result.max_analytic.max(analytic.abs());
        result.max_numeric = result.max_numeric.max(numeric.abs());
        result.checked += 1;
    }
    result
}
