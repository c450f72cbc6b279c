//! Minimal Nelder–Mead simplex minimiser for the low-dimensional orientation
//! searches.

pub struct NmOptions {
    pub max_iters: usize,
    /// Stop when the simplex diameter falls below this.
    pub diam_tol: f64,
    /// Stop when the best value improves by less than this ...
    pub stall_tol: f64,
    /// ... over this many consecutive iterations.
    pub stall_iters: usize,
}

impl Default for NmOptions {
    fn default() -> Self {
        NmOptions {
            max_iters: 2000,
            diam_tol: 1e-10,
            stall_tol: 1e-14,
            stall_iters: 25,
        }
    }
}

pub struct NmResult<const N: usize> {
    pub x: [f64; N],
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub fn nelder_mead<const N: usize>(
    mut f: impl FnMut(&[f64; N]) -> f64,
    x0: [f64; N],
    step: f64,
    opts: &NmOptions,
) -> NmResult<N> {
    const ALPHA: f64 = 1.0; // reflection
    const GAMMA: f64 = 2.0; // expansion
    const RHO: f64 = 0.5; // contraction
    const SIGMA: f64 = 0.5; // shrink

    let mut pts: Vec<[f64; N]> = Vec::with_capacity(N + 1);
    pts.push(x0);
    for i in 0..N {
        let mut p = x0;
        p[i] += step;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(&mut f).collect();

    let mut best_seen = f64::INFINITY;
    let mut stall = 0usize;
    let mut iterations = 0usize;
    let mut converged = false;

    for iter in 0..opts.max_iters {
        iterations = iter + 1;
        let mut order: Vec<usize> = (0..=N).collect();
        order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
        let sorted_pts: Vec<[f64; N]> = order.iter().map(|&i| pts[i]).collect();
        let sorted_vals: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
        pts = sorted_pts;
        vals = sorted_vals;

        // convergence checks
        let diam = (1..=N)
            .map(|i| dist(&pts[0], &pts[i]))
            .fold(0.0f64, f64::max);
        if diam < opts.diam_tol {
            converged = true;
            break;
        }
        if best_seen - vals[0] < opts.stall_tol {
            stall += 1;
            if stall >= opts.stall_iters {
                converged = true;
                break;
            }
        } else {
            stall = 0;
        }
        best_seen = best_seen.min(vals[0]);

        // centroid of all but the worst
        let mut centroid = [0.0; N];
        for p in pts.iter().take(N) {
            for k in 0..N {
                centroid[k] += p[k] / N as f64;
            }
        }

        let worst = vals[N];
        let reflected = lerp(&centroid, &pts[N], -ALPHA);
        let fr = f(&reflected);
        if fr < vals[0] {
            let expanded = lerp(&centroid, &pts[N], -GAMMA);
            let fe = f(&expanded);
            if fe < fr {
                pts[N] = expanded;
                vals[N] = fe;
            } else {
                pts[N] = reflected;
                vals[N] = fr;
            }
        } else if fr < vals[N - 1] {
            pts[N] = reflected;
            vals[N] = fr;
        } else {
            let contracted = if fr < worst {
                lerp(&centroid, &pts[N], -RHO)
            } else {
                lerp(&centroid, &pts[N], RHO)
            };
            let fc = f(&contracted);
            if fc < worst.min(fr) {
                pts[N] = contracted;
                vals[N] = fc;
            } else {
                // shrink toward the best point
                for i in 1..=N {
                    pts[i] = lerp(&pts[0], &pts[i], SIGMA);
                    vals[i] = f(&pts[i]);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=N {
        if vals[i] < vals[best] {
            best = i;
        }
    }
    NmResult {
        x: pts[best],
        fx: vals[best],
        iterations,
        converged,
    }
}

fn dist<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    let mut s = 0.0;
    for k in 0..N {
        let d = a[k] - b[k];
        s += d * d;
    }
    s.sqrt()
}

/// `centroid + t * (centroid - worst)` reparametrised: returns
/// `centroid + t * (worst - centroid)`.
fn lerp<const N: usize>(centroid: &[f64; N], worst: &[f64; N], t: f64) -> [f64; N] {
    let mut out = [0.0; N];
    for k in 0..N {
        out[k] = centroid[k] + t * (worst[k] - centroid[k]);
    }
    out
}
