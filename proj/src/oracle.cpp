#include "lagphase/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "lagphase/core.hpp"

namespace lagphase {

namespace {

// Kronrod abscissae and weights (15 points) with the embedded 7-point Gauss
// weights; Gauss nodes are the odd-indexed Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
  double a;
  double b;
  double value;
  double error;
  std::size_t id;
};

struct LargerError {
  bool operator()(const Segment& l, const Segment& r) const {
    if (l.error != r.error) return l.error < r.error;
    return l.id > r.id;
  }
};

double eval_checked(const Integrand& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v))
    throw DomainError("integrand is not finite at x = " + std::to_string(x));
  return v;
}

Segment kronrod15(const Integrand& f, double a, double b, std::size_t id) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = eval_checked(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kronrod);

  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = eval_checked(f, center - dx);
    const double f2 = eval_checked(f, center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }

  const double value = kronrod * half;
  const double resabs = abs_sum * std::abs(half);
  const double err = std::max(std::abs((kronrod - gauss) * half), 50.0 * kEps * resabs);
  return Segment{a, b, value, err, id};
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw DomainError("quadrature tolerances must be strictly positive");
  if (max_subdivisions == 0) throw DomainError("quadrature max_subdivisions must be positive");
}

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate() needs finite limits; use integrate_mapped()");
  if (a == b) return QuadratureResult{0.0, 0.0, 0, true};

  std::priority_queue<Segment, std::vector<Segment>, LargerError> queue;
  std::size_t next_id = 0;
  Segment first = kronrod15(f, a, b, next_id++);
  double total = first.value;
  double total_err = first.error;
  std::size_t evaluations = 15;
  queue.push(first);

  auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };

  bool converged = total_err <= target();
  std::size_t subdivisions = 0;
  while (!converged && subdivisions < cfg.max_subdivisions) {
    const Segment worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // Interval too narrow to split further in double precision.
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) break;
    queue.pop();

    const Segment left = kronrod15(f, worst.a, mid, next_id++);
    const Segment right = kronrod15(f, mid, worst.b, next_id++);
    evaluations += 30;
    ++subdivisions;

    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    converged = total_err <= target();
  }

  // Re-sum from the final partition so running-update drift does not leak
  // into the reported value.
  double value = 0.0;
  double err = 0.0;
  std::vector<Segment> parts;
  parts.reserve(queue.size());
  while (!queue.empty()) {
    parts.push_back(queue.top());
    queue.pop();
  }
  std::sort(parts.begin(), parts.end(), [](const Segment& l, const Segment& r) {
    return std::min(l.a, l.b) < std::min(r.a, r.b);
  });
  for (const auto& s : parts) {
    value += s.value;
    err += s.error;
  }
  err += kEps * static_cast<double>(parts.size()) * std::abs(value);

  return QuadratureResult{value, err, evaluations,
                          err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))};
}

QuadratureResult integrate_mapped(const Integrand& f, double a, double b,
                                  const QuadratureConfig& cfg, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw DomainError("integrate_mapped() needs a positive length scale");
  if (std::isnan(a) || std::isnan(b)) throw DomainError("integration limit is NaN");

  constexpr double half_pi = 0.5 * std::numbers::pi;
  auto to_angle = [&](double x) {
    if (std::isinf(x)) return x > 0 ? half_pi : -half_pi;
    return std::atan(x / scale);
  };

  const Integrand mapped = [&f, scale](double theta) {
    const double c = std::cos(theta);
    return f(scale * std::tan(theta)) * scale / (c * c);
  };
  return integrate(mapped, to_angle(a), to_angle(b), cfg);
}

Extrapolation richardson_extrapolate(std::span<const RichardsonSample> samples, int order) {
  if (samples.size() < 2) throw DomainError("Richardson extrapolation needs at least two samples");
  if (order < 1) throw DomainError("Richardson order must be at least 1");

  std::vector<RichardsonSample> s(samples.begin(), samples.end());
  for (const auto& p : s) {
    if (!(p.h > 0.0) || !std::isfinite(p.h) || !std::isfinite(p.value))
      throw DomainError("Richardson samples need positive finite h and finite values");
  }
  std::sort(s.begin(), s.end(), [](const auto& l, const auto& r) { return l.h > r.h; });
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!(s[i - 1].h > s[i].h * (1.0 + 1e-12)))
      throw DomainError("Richardson samples need distinct step sizes");
  }

  // The n samples fix the limit and n - 1 coefficients of
  // value = L + sum_j c_j h^(order + j) exactly; h is scaled by the largest
  // step to keep the system well scaled.  The error estimate compares with
  // the same fit on the n - 1 smallest steps.
  auto solve = [order](std::span<const RichardsonSample> pts) {
    const std::size_t n = pts.size();
    const double h_max = pts.front().h;
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
      a[i][0] = 1.0;
      for (std::size_t j = 1; j < n; ++j)
        a[i][j] = std::pow(pts[i].h / h_max, static_cast<double>(order) + static_cast<double>(j) - 1.0);
      a[i][n] = pts[i].value;
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      for (std::size_t r = col + 1; r < n; ++r)
        if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
      std::swap(a[col], a[pivot]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col) continue;
        const double factor = a[r][col] / a[col][col];
        for (std::size_t c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
      }
    }
    return a[0][n] / a[0][0];
  };

  const double limit = solve(s);
  const double previous = s.size() > 2 ? solve(std::span(s).subspan(1)) : s.back().value;
  return Extrapolation{limit, std::abs(limit - previous)};
}

double fit_convergence_order(std::span<const ConvergenceSample> samples) {
  if (samples.size() < 3) throw DomainError("order fit needs at least three samples");
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : samples) {
    if (!(p.h > 0.0) || !(p.error > 0.0) || !std::isfinite(p.error) || !std::isfinite(p.h))
      throw DomainError("order fit needs positive h and positive error values");
    mx += std::log(p.h);
    my += std::log(p.error);
  }
  const double n = static_cast<double>(samples.size());
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& p : samples) {
    const double dx = std::log(p.h) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.error) - my);
  }
  if (sxx == 0.0) throw DomainError("order fit needs distinct h values");
  return sxy / sxx;
}

}  // namespace lagphase
