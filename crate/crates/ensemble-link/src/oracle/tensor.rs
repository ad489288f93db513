//! Photon-number-basis state tensors and exact linear-optics operations.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Physical role of a tensor mode.
///
/// Labels are stable across operations: a beam splitter mixes amplitudes but
/// keeps labels in place, and loss appends a fresh [`Mode::Ancilla`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Stored collective excitation of the left-side ensemble (or the left
    /// spectator ensemble in the swapping and teleportation circuits).
    AtomL,
    /// Right-side counterpart of [`Mode::AtomL`].
    AtomR,
    /// A propagating photonic mode, numbered within the circuit.
    Photon(u8),
    /// Vacuum port of a fictitious loss beam splitter.
    Ancilla(u8),
}

/// Ordered association between physical roles and tensor axes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModeMap(Vec<Mode>);

impl ModeMap {
    /// Axis of `mode`, or an error naming the missing mode.
    pub fn axis(&self, mode: Mode) -> Result<usize> {
        self.0
            .iter()
            .position(|&m| m == mode)
            .ok_or(Error::ModeNotFound(mode))
    }

    /// Modes in axis order.
    pub fn modes(&self) -> &[Mode] {
        &self.0
    }

    fn push(&mut self, mode: Mode) {
        debug_assert!(!self.0.contains(&mode), "duplicate mode label");
        self.0.push(mode);
    }

    fn remove(&mut self, axis: usize) -> Mode {
        self.0.remove(axis)
    }
}

/// A pure multimode state in the photon-number basis, truncated per mode.
///
/// Amplitudes are stored dense and row-major (last axis fastest). Dimensions
/// may differ per mode and grow when an operation can raise a mode's photon
/// count (a balanced beam splitter can move every photon into one port).
#[derive(Debug, Clone)]
pub struct FockTensor {
    map: ModeMap,
    dims: Vec<usize>,
    amp: Vec<C64>,
}

/// Binomial coefficient by multiplicative accumulation, rounded back to the
/// nearest integer.
///
/// Exact in f64 up to n = 56, far beyond any truncation used here.
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Beam-splitter amplitude for inputs `|u⟩` (minus port) and `|v⟩` (plus
/// port) scattering into `|s1⟩` on output port 1 and `|u + v - s1⟩` on port 2.
///
/// Convention: a minus-port photon reaches port 1 with amplitude -1/sqrt(2)
/// and port 2 with +1/sqrt(2); a plus-port photon reaches both with
/// +1/sqrt(2).
pub(crate) fn bs5050_amp(u: usize, v: usize, s1: usize) -> f64 {
    let total = u + v;
    if s1 > total {
        return 0.0;
    }
    let s2 = total - s1;
    let mut sum = 0.0;
    // k = number of minus-port photons sent to port 1 (each contributes -1).
    let k_lo = s1.saturating_sub(v);
    let k_hi = s1.min(u);
    for k in k_lo..=k_hi {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binomial(u, k) * binomial(v, s1 - k);
    }
    let norm = (factorial(s1) * factorial(s2) / (factorial(u) * factorial(v))).sqrt();
    sum * norm * 0.5f64.powi(total as i32 / 2) * if total % 2 == 1 { 0.5f64.sqrt() } else { 1.0 }
}

/// Loss amplitude: `|n⟩` keeps `n - l` photons and leaks `l` into the ancilla
/// of a transmissivity-`eta` beam splitter.
pub(crate) fn loss_amp(n: usize, l: usize, eta: f64) -> f64 {
    if l > n {
        return 0.0;
    }
    (binomial(n, l) * eta.powi((n - l) as i32) * (1.0 - eta).powi(l as i32)).sqrt()
}

impl FockTensor {
    /// Multimode vacuum with the given labels and per-mode dimensions.
    pub fn vacuum(modes: &[Mode], dims: &[usize]) -> Self {
        assert_eq!(modes.len(), dims.len());
        let mut map = ModeMap::default();
        for &m in modes {
            map.push(m);
        }
        let len = dims.iter().product();
        let mut amp = vec![C64::new(0.0, 0.0); len];
        amp[0] = C64::new(1.0, 0.0);
        FockTensor {
            map,
            dims: dims.to_vec(),
            amp,
        }
    }

    /// State with explicitly listed basis components.
    pub fn from_components(modes: &[Mode], dims: &[usize], parts: &[(&[usize], C64)]) -> Self {
        let mut t = Self::vacuum(modes, dims);
        t.amp[0] = C64::new(0.0, 0.0);
        for (idx, a) in parts {
            let flat = t.flatten(idx);
            t.amp[flat] += a;
        }
        t
    }

    /// Mode labels in axis order.
    pub fn mode_map(&self) -> &ModeMap {
        &self.map
    }

    /// Per-mode truncation dimensions.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Sum of squared amplitude magnitudes.
    pub fn norm_sq(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    fn strides(&self) -> Vec<usize> {
        let mut s = vec![1usize; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.dims[i + 1];
        }
        s
    }

    fn flatten(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        let strides = self.strides();
        idx.iter().zip(&strides).map(|(i, s)| i * s).sum()
    }

    /// Tensor product; mode labels must be disjoint.
    pub fn product(&self, other: &FockTensor) -> FockTensor {
        let mut map = self.map.clone();
        for &m in other.map.modes() {
            map.push(m);
        }
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut amp = Vec::with_capacity(self.amp.len() * other.amp.len());
        for a in &self.amp {
            for b in &other.amp {
                amp.push(a * b);
            }
        }
        FockTensor { map, dims, amp }
    }

    /// Photon loss on `mode` with transmissivity `eta`, modeled as a beam
    /// splitter against a fresh vacuum ancilla appended as the last axis.
    pub fn apply_loss(&self, mode: Mode, eta: f64, ancilla: Mode) -> Result<FockTensor> {
        crate::error::check_unit_interval("eta", eta)?;
        let axis = self.map.axis(mode)?;
        if self.map.axis(ancilla).is_ok() {
            return Err(Error::DuplicateMode);
        }
        let d = self.dims[axis];
        let mut map = self.map.clone();
        map.push(ancilla);
        let mut dims = self.dims.clone();
        dims.push(d);
        let mut out = FockTensor {
            map,
            dims,
            amp: vec![C64::new(0.0, 0.0); self.amp.len() * d],
        };

        let strides = self.strides();
        let axis_stride = strides[axis];
        // In the output, the ancilla is the fastest axis.
        for (flat, &a) in self.amp.iter().enumerate() {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            let n = flat / axis_stride % d;
            let base = flat - n * axis_stride;
            for l in 0..=n {
                let w = loss_amp(n, l, eta);
                if w == 0.0 {
                    continue;
                }
                let out_flat = (base + (n - l) * axis_stride) * d + l;
                out.amp[out_flat] += a * w;
            }
        }
        Ok(out)
    }

    /// Balanced beam splitter across two distinct modes.
    ///
    /// After the call, the `minus_in` slot holds output port 1 and the
    /// `plus_in` slot output port 2; a photon entering through `minus_in`
    /// acquires a sign flip on port 1 (see [`bs5050_amp`]). Setting
    /// `flip_sign` moves the sign flip to the `plus_in` photons instead. Both
    /// output dimensions grow to hold every photon bunching into one port.
    pub fn apply_5050(&self, minus_in: Mode, plus_in: Mode, flip_sign: bool) -> Result<FockTensor> {
        let ax_m = self.map.axis(minus_in)?;
        let ax_p = self.map.axis(plus_in)?;
        if ax_m == ax_p {
            return Err(Error::DuplicateMode);
        }
        let (dm, dp) = (self.dims[ax_m], self.dims[ax_p]);
        let d_out = dm + dp - 1;
        let mut dims = self.dims.clone();
        dims[ax_m] = d_out;
        dims[ax_p] = d_out;
        let mut out = FockTensor {
            map: self.map.clone(),
            dims,
            amp: vec![C64::new(0.0, 0.0); self.amp.len() / (dm * dp) * d_out * d_out],
        };

        let in_strides = self.strides();
        let out_strides = out.strides();
        let mut idx = vec![0usize; self.dims.len()];
        for (flat, &a) in self.amp.iter().enumerate() {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            let mut rem = flat;
            for (i, s) in in_strides.iter().enumerate() {
                idx[i] = rem / s;
                rem %= s;
            }
            let (u, v) = (idx[ax_m], idx[ax_p]);
            let base: usize = idx
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != ax_m && i != ax_p)
                .map(|(i, &x)| x * out_strides[i])
                .sum();
            for s1 in 0..=(u + v) {
                let w = if flip_sign {
                    bs5050_amp(v, u, s1)
                } else {
                    bs5050_amp(u, v, s1)
                };
                if w == 0.0 {
                    continue;
                }
                let out_flat = base + s1 * out_strides[ax_m] + (u + v - s1) * out_strides[ax_p];
                out.amp[out_flat] += a * w;
            }
        }
        Ok(out)
    }

    /// Probability of finding exactly the listed photon counts on the listed
    /// modes (other modes are unconstrained).
    pub fn outcome_probability(&self, pattern: &[(Mode, usize)]) -> Result<f64> {
        let constraints = self.pattern_constraints(pattern)?;
        let strides = self.strides();
        let mut p = 0.0;
        for (flat, a) in self.amp.iter().enumerate() {
            if constraints
                .iter()
                .all(|&(ax, n)| flat / strides[ax] % self.dims[ax] == n)
            {
                p += a.norm_sqr();
            }
        }
        Ok(p)
    }

    /// Projects the listed modes onto exact photon counts.
    ///
    /// Returns the outcome probability and the normalized post-measurement
    /// state on the remaining modes; a zero-probability outcome has no
    /// post-measurement state and is reported as an error.
    pub fn measure(&self, pattern: &[(Mode, usize)]) -> Result<(f64, FockTensor)> {
        let constraints = self.pattern_constraints(pattern)?;
        let strides = self.strides();

        let mut map = self.map.clone();
        let mut removed: Vec<usize> = constraints.iter().map(|&(ax, _)| ax).collect();
        removed.sort_unstable();
        for &ax in removed.iter().rev() {
            map.remove(ax);
        }
        let dims: Vec<usize> = self
            .dims
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, &d)| d)
            .collect();
        let mut post = FockTensor {
            map,
            dims: dims.clone(),
            amp: vec![C64::new(0.0, 0.0); dims.iter().product()],
        };
        let post_strides = post.strides();

        let mut p = 0.0;
        for (flat, &a) in self.amp.iter().enumerate() {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            if !constraints
                .iter()
                .all(|&(ax, n)| flat / strides[ax] % self.dims[ax] == n)
            {
                continue;
            }
            p += a.norm_sqr();
            let mut out_flat = 0;
            let mut k = 0;
            for i in 0..self.dims.len() {
                if removed.contains(&i) {
                    continue;
                }
                out_flat += flat / strides[i] % self.dims[i] * post_strides[k];
                k += 1;
            }
            post.amp[out_flat] = a;
        }
        if p <= 0.0 {
            return Err(Error::ImpossibleOutcome);
        }
        let norm = p.sqrt();
        for a in &mut post.amp {
            *a /= norm;
        }
        Ok((p, post))
    }

    /// Overlap fidelity `⟨target| tr_rest(|self⟩⟨self|) |target⟩`.
    ///
    /// `target` must be a pure state on a subset of this tensor's modes; the
    /// remaining modes are traced out by enumerating their joint photon
    /// counts.
    pub fn fidelity_against(&self, target: &FockTensor) -> Result<f64> {
        let axes: Vec<usize> = target
            .map
            .modes()
            .iter()
            .map(|&m| self.map.axis(m))
            .collect::<Result<_>>()?;
        let strides = self.strides();
        let rest: Vec<usize> = (0..self.dims.len()).filter(|i| !axes.contains(i)).collect();
        let rest_len: usize = rest.iter().map(|&i| self.dims[i]).product::<usize>().max(1);

        // dot[rest outcome] = ⟨target ⊗ rest outcome | self⟩
        let mut dot = vec![C64::new(0.0, 0.0); rest_len];
        for (flat, &a) in self.amp.iter().enumerate() {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            let mut t_idx = vec![0usize; axes.len()];
            let mut in_range = true;
            for (k, &ax) in axes.iter().enumerate() {
                let n = flat / strides[ax] % self.dims[ax];
                if n >= target.dims[k] {
                    in_range = false;
                    break;
                }
                t_idx[k] = n;
            }
            if !in_range {
                continue;
            }
            let t_amp = target.amp[target.flatten(&t_idx)];
            if t_amp == C64::new(0.0, 0.0) {
                continue;
            }
            let mut rest_flat = 0;
            for &i in &rest {
                rest_flat = rest_flat * self.dims[i] + flat / strides[i] % self.dims[i];
            }
            dot[rest_flat] += t_amp.conj() * a;
        }
        Ok(dot.iter().map(|d| d.norm_sqr()).sum())
    }

    fn pattern_constraints(&self, pattern: &[(Mode, usize)]) -> Result<Vec<(usize, usize)>> {
        pattern
            .iter()
            .map(|&(m, n)| self.map.axis(m).map(|ax| (ax, n)))
            .collect()
    }
}

/// Two-mode-squeezed source state truncated at `n_max` excitations.
///
/// The joint amplitude of `n` stored excitations and `n` emitted photons is
/// `sqrt(1 - p_c) * (sqrt(p_c) e^{i theta})^n`, giving the geometric
/// photon-number distribution `(1 - p_c) p_c^n`.
pub fn build_tms(p_c: f64, theta: f64, n_max: usize, atom: Mode, photon: Mode) -> Result<FockTensor> {
    crate::error::check_unit_interval("p_c", p_c)?;
    if p_c >= 1.0 {
        return Err(Error::ExcitationProbability(p_c));
    }
    let d = n_max + 1;
    let mut t = FockTensor::vacuum(&[atom, photon], &[d, d]);
    t.amp[0] = C64::new(0.0, 0.0);
    let ratio = C64::from_polar(p_c.sqrt(), theta);
    let mut a = C64::new((1.0 - p_c).sqrt(), 0.0);
    for n in 0..d {
        let flat = n * d + n;
        t.amp[flat] = a;
        a *= ratio;
    }
    Ok(t)
}
