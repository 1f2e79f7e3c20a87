#include "qbounce/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "qbounce/airy.hpp"
#include "qbounce/errors.hpp"

namespace qbounce {

namespace {

double trapezoid_sq(const std::vector<double>& psi, double h) {
    double s = 0.5 * (psi.front() * psi.front() + psi.back() * psi.back());
    for (std::size_t i = 1; i + 1 < psi.size(); ++i) s += psi[i] * psi[i];
    return s * h;
}

// Normalize to unit trapezoid integral and make the first interior lobe
// positive (determinism for golden files).
void normalize_and_orient(std::vector<double>& psi, double h) {
    const double norm = std::sqrt(trapezoid_sq(psi, h));
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw NumericError("eigen: wavefunction normalization failed");
    double peak = 0.0;
    for (double v : psi) peak = std::max(peak, std::abs(v));
    double first_lobe = 0.0;
    for (double v : psi) {
        if (std::abs(v) > 0.05 * peak) {
            first_lobe = v;
            break;
        }
    }
    const double scale = (first_lobe < 0.0 ? -1.0 : 1.0) / norm;
    for (double& v : psi) v *= scale;
}

// Count of eigenvalues of the symmetric tridiagonal matrix (diag d, uniform
// off-diagonal e) strictly below x, via the Sturm sequence.
int sturm_count(const std::vector<double>& d, double e, double x) {
    const double e2 = e * e;
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    int count = 0;
    double q = 1.0;
    for (double di : d) {
        q = (q == 0.0) ? di - x - std::abs(e) / tiny : di - x - e2 / q;
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

// k-th (1-based) smallest eigenvalue by bisection.
double bisect_eigenvalue(const std::vector<double>& d, double e, int k, double lo, double hi) {
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (sturm_count(d, e, mid) >= k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Solve (T - lambda I) v = rhs in place, T symmetric tridiagonal with diag d
// and uniform off-diagonal e. Gaussian elimination with partial pivoting; a
// row swap fills in a second superdiagonal, so keep both bands. Rows below
// the pivot are untouched by earlier steps, so the subdiagonal entry entering
// step i is always the original e. Returns false if the solve degenerates.
bool tridiag_shifted_solve(const std::vector<double>& d, double e, double lambda,
                           std::vector<double>& v) {
    const std::size_t m = d.size();
    std::vector<double> b(m), c(m, 0.0), u2(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) b[i] = d[i] - lambda;
    for (std::size_t i = 0; i + 1 < m; ++i) c[i] = e;

    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (std::abs(b[i]) >= std::abs(e)) {
            if (b[i] == 0.0) b[i] = 1e-300;
            const double mult = e / b[i];
            b[i + 1] -= mult * c[i];
            v[i + 1] -= mult * v[i];
        } else {
            // pivot row becomes the old row i+1
            const double mult = b[i] / e;
            const double ci_old = c[i]; // superdiag of row i, may differ from e after a prior swap
            const double bi1 = b[i + 1], ci1 = c[i + 1];
            b[i] = e;
            c[i] = bi1;
            u2[i] = ci1;
            b[i + 1] = ci_old - mult * bi1;
            c[i + 1] = -mult * ci1;
            std::swap(v[i], v[i + 1]);
            v[i + 1] -= mult * v[i];
        }
    }
    if (b[m - 1] == 0.0) b[m - 1] = 1e-300;

    v[m - 1] /= b[m - 1];
    if (m >= 2) v[m - 2] = (v[m - 2] - c[m - 2] * v[m - 1]) / b[m - 2];
    for (std::size_t i = m - 2; i-- > 0;)
        v[i] = (v[i] - c[i] * v[i + 1] - u2[i] * v[i + 2]) / b[i];
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

int default_gravity_points(int n_states) { return std::max(8000, 600 * n_states); }
int default_box_points(int n_states) { return std::max(2000, 400 * n_states); }

} // namespace

AirySpectrumScale airy_spectrum_scale(const PhysicalConstants& c) {
    AirySpectrumScale s;
    s.z0 = std::cbrt(c.hbar * c.hbar / (2.0 * c.neutron_mass * c.neutron_mass * c.g_accel));
    s.epsilon0 =
        Energy{std::cbrt(c.hbar * c.hbar * c.neutron_mass * c.g_accel * c.g_accel / 2.0)};
    return s;
}

std::vector<EigenSolution> gravity_mirror_spectrum(const PhysicalConstants& c, int n_states,
                                                   int n_points, double min_z_cut) {
    if (n_states < 1 || n_states > 50)
        throw ValidationError("gravity_mirror_spectrum: n_states must be in [1, 50]");
    if (n_points == 0) n_points = default_gravity_points(n_states);

    const AirySpectrumScale scale = airy_spectrum_scale(c);
    PotentialSpec spec;
    spec.kind = PotentialKind::GravityMirror;
    Grid grid = sample(spec, c, n_points, n_states);
    if (grid.z_max < min_z_cut) {
        grid.z_max = min_z_cut;
        for (int i = 0; i < grid.n_points; ++i)
            grid.values[i] = c.neutron_mass * c.g_accel * grid.z_at(i);
    }
    const double h = grid.spacing();

    std::vector<EigenSolution> out;
    out.reserve(n_states);
    for (int n = 1; n <= n_states; ++n) {
        const double alpha = airy_zero(n);
        EigenSolution s;
        s.n = n;
        s.energy = Energy{scale.epsilon0.joules * alpha};
        s.method = SolveMethod::AnalyticAiry;
        s.z.resize(grid.n_points);
        s.psi.resize(grid.n_points);
        for (int i = 0; i < grid.n_points; ++i) {
            s.z[i] = grid.z_at(i);
            s.psi[i] = detail::airy_ai_unchecked(s.z[i] / scale.z0 - alpha);
        }
        normalize_and_orient(s.psi, h);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<EigenSolution> box_spectrum(const PhysicalConstants& c, double width, int n_states,
                                        int n_points) {
    if (!(width > 0.0) || !std::isfinite(width))
        throw ValidationError("box_spectrum: width must be > 0");
    if (n_states < 1 || n_states > 1000)
        throw ValidationError("box_spectrum: n_states must be in [1, 1000]");
    if (n_points == 0) n_points = default_box_points(n_states);

    const double e1 = c.hbar * c.hbar * M_PI * M_PI / (2.0 * c.neutron_mass * width * width);
    const double amp = std::sqrt(2.0 / width);
    const double h = width / (n_points - 1);

    std::vector<EigenSolution> out;
    out.reserve(n_states);
    for (int n = 1; n <= n_states; ++n) {
        EigenSolution s;
        s.n = n;
        s.energy = Energy{e1 * n * n};
        s.method = SolveMethod::AnalyticBox;
        s.z.resize(n_points);
        s.psi.resize(n_points);
        for (int i = 0; i < n_points; ++i) {
            s.z[i] = i * h;
            s.psi[i] = amp * std::sin(n * M_PI * s.z[i] / width);
        }
        s.psi.front() = 0.0;
        s.psi.back() = 0.0;
        normalize_and_orient(s.psi, h);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<EigenSolution> solve_numeric(const Grid& grid, const PhysicalConstants& c,
                                         int n_states, Boundary boundary) {
    if (grid.n_points < 16 || static_cast<int>(grid.values.size()) != grid.n_points)
        throw ValidationError("solve_numeric: invalid grid");
    if (n_states < 1) throw ValidationError("solve_numeric: n_states must be >= 1");
    if (n_states >= grid.n_points / 8)
        throw ValidationError("solve_numeric: grid resolution too coarse for " +
                              std::to_string(n_states) + " states (" +
                              std::to_string(grid.n_points) + " points)");

    const double h = grid.spacing();
    const double t = c.hbar * c.hbar / (2.0 * c.neutron_mass * h * h);
    const int m = grid.n_points - 2; // interior nodes
    std::vector<double> d(m);
    for (int i = 0; i < m; ++i) d[i] = 2.0 * t + grid.values[i + 1];
    const double e = -t;

    double lo = d[0], hi = d[0];
    for (double di : d) {
        lo = std::min(lo, di);
        hi = std::max(hi, di);
    }
    lo -= 2.0 * std::abs(e);
    hi += 2.0 * std::abs(e);

    std::vector<EigenSolution> out;
    out.reserve(n_states);
    double prev_lambda = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= n_states; ++k) {
        const double lambda = bisect_eigenvalue(d, e, k, lo, hi);
        if (!(lambda > prev_lambda))
            throw NumericError("solve_numeric: eigenvalues not strictly increasing at n=" +
                               std::to_string(k));
        prev_lambda = lambda;

        if (boundary == Boundary::DirichletLeftDecayRight && grid.barrier_top &&
            lambda >= *grid.barrier_top)
            break; // remaining states are not genuinely bound below the step

        // Inverse iteration from a deterministic pseudo-random start.
        std::vector<double> v(m);
        std::mt19937 rng(7919u + static_cast<unsigned>(k));
        std::uniform_real_distribution<double> uni(-0.5, 0.5);
        for (double& x : v) x = uni(rng);

        bool ok = false;
        double shift = lambda;
        for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
            ok = true;
            for (int pass = 0; pass < 3 && ok; ++pass) {
                ok = tridiag_shifted_solve(d, e, shift, v);
                if (ok) {
                    double mx = 0.0;
                    for (double x : v) mx = std::max(mx, std::abs(x));
                    if (!(mx > 0.0)) {
                        ok = false;
                        break;
                    }
                    for (double& x : v) x /= mx;
                }
            }
            if (!ok) {
                // nudge the shift off the exactly-singular point and restart
                shift = lambda * (1.0 + 1e-12 * (attempt + 1.0)) + 1e-300;
                for (double& x : v) x = uni(rng);
            }
        }
        if (!ok)
            throw NumericError("solve_numeric: inverse iteration failed for state n=" +
                               std::to_string(k) + " (lambda=" + std::to_string(lambda) + " J)");

        EigenSolution s;
        s.n = k;
        s.energy = Energy{lambda};
        s.method = SolveMethod::NumericFD;
        s.z.resize(grid.n_points);
        s.psi.resize(grid.n_points);
        s.psi.front() = 0.0;
        s.psi.back() = 0.0;
        for (int i = 0; i < m; ++i) {
            s.z[i + 1] = grid.z_at(i + 1);
            s.psi[i + 1] = v[i];
        }
        s.z.front() = grid.z_at(0);
        s.z.back() = grid.z_at(grid.n_points - 1);
        normalize_and_orient(s.psi, h);

        if (count_nodes(s) != k - 1)
            throw NumericError("solve_numeric: state n=" + std::to_string(k) +
                               " has wrong node count " + std::to_string(count_nodes(s)));
        out.push_back(std::move(s));
    }
    return out;
}

double inner_product(const EigenSolution& a, const EigenSolution& b) {
    if (a.z.size() != b.z.size() || a.z.front() != b.z.front() || a.z.back() != b.z.back())
        throw ValidationError("inner_product: solutions on different grids");
    const double h = a.grid_spacing();
    double s = 0.5 * (a.psi.front() * b.psi.front() + a.psi.back() * b.psi.back());
    for (std::size_t i = 1; i + 1 < a.psi.size(); ++i) s += a.psi[i] * b.psi[i];
    return s * h;
}

int count_nodes(const EigenSolution& s) {
    double peak = 0.0;
    for (double v : s.psi) peak = std::max(peak, std::abs(v));
    const double tol = 1e-8 * peak;
    int changes = 0;
    double prev = 0.0;
    for (std::size_t i = 1; i + 1 < s.psi.size(); ++i) {
        const double v = s.psi[i];
        if (std::abs(v) <= tol) continue;
        if (prev != 0.0 && v * prev < 0.0) ++changes;
        prev = v;
    }
    return changes;
}

} // namespace qbounce
