#include "calabi/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace calabi::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Kronrod 15-point abscissae (positive half) and weights; the embedded Gauss
// 7-point rule uses the odd-indexed abscissae.
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

// A finite piece of the original interval, possibly after the u/(1-u) map.
struct Segment {
  enum class Kind { Finite, UpperInfinite, LowerInfinite } kind;
  double anchor;  // finite end for the semi-infinite kinds
};

struct Panel {
  double lo, hi, value, error;
  int segment;
  bool operator<(const Panel& o) const {
    if (error != o.error) return error < o.error;
    // Tie-break on position so the heap order is fully determined by the inputs.
    if (segment != o.segment) return segment > o.segment;
    return lo > o.lo;
  }
};

double map_x(const Segment& s, double u) {
  switch (s.kind) {
    case Segment::Kind::Finite: return u;
    case Segment::Kind::UpperInfinite: return s.anchor + u / (1.0 - u);
    case Segment::Kind::LowerInfinite: return s.anchor - u / (1.0 - u);
  }
  return u;
}

double map_jacobian(const Segment& s, double u) {
  if (s.kind == Segment::Kind::Finite) return 1.0;
  const double w = 1.0 - u;
  return 1.0 / (w * w);
}

class Evaluator {
 public:
  Evaluator(const Function& f, long budget) : f_(f), budget_(budget) {}

  double operator()(const Segment& s, double u) {
    const double x = map_x(s, u);
    const double jac = map_jacobian(s, u);
    const double y = f_(x);
    ++count_;
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "integrand returned " << y << " at x = " << x;
      throw QuadratureError(os.str(), partial_, x);
    }
    return y * jac;
  }

  long count() const { return count_; }
  long budget() const { return budget_; }
  void set_partial(double p) { partial_ = p; }

 private:
  const Function& f_;
  long budget_;
  long count_ = 0;
  double partial_ = 0.0;
};

Panel kronrod(Evaluator& eval, const Segment& seg, int seg_index, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = eval(seg, center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = eval(seg, center - dx);
    f2[j] = eval(seg, center + dx);
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));

  const double value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return Panel{lo, hi, value, err, seg_index};
}

std::vector<std::pair<Segment, std::pair<double, double>>> build_segments(double lo, double hi,
                                                                          std::vector<double> breaks) {
  std::vector<double> cuts;
  cuts.push_back(lo);
  std::sort(breaks.begin(), breaks.end());
  for (double b : breaks)
    if (b > lo && b < hi && std::isfinite(b) && (cuts.empty() || b > cuts.back())) cuts.push_back(b);
  if (std::isinf(lo) && std::isinf(hi) && cuts.size() == 1) cuts.push_back(0.0);
  cuts.push_back(hi);

  std::vector<std::pair<Segment, std::pair<double, double>>> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (std::isinf(a) && std::isinf(b)) continue;
    if (std::isinf(b))
      out.push_back({Segment{Segment::Kind::UpperInfinite, a}, {0.0, 1.0}});
    else if (std::isinf(a))
      out.push_back({Segment{Segment::Kind::LowerInfinite, b}, {0.0, 1.0}});
    else
      out.push_back({Segment{Segment::Kind::Finite, 0.0}, {a, b}});
  }
  return out;
}

}  // namespace

QuadratureResult integrate(const Function& f, double lo, double hi, const QuadratureOptions& opts) {
  if (std::isnan(lo) || std::isnan(hi)) throw InvalidInput("integrate: NaN interval endpoint");
  if (lo == hi) return QuadratureResult{0.0, 0.0, 1};
  if (lo > hi) {
    auto r = integrate(f, hi, lo, opts);
    r.value = -r.value;
    return r;
  }
  if (!(opts.rel_tol > 0.0)) throw InvalidInput("integrate: rel_tol must be positive");

  const auto segments = build_segments(lo, hi, opts.breakpoints);
  Evaluator eval(f, opts.max_evaluations);
  std::priority_queue<Panel> heap;
  double total = 0.0, total_err = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& [seg, range] = segments[i];
    Panel p = kronrod(eval, seg, static_cast<int>(i), range.first, range.second);
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }

  auto converged = [&] {
    const double target = std::max({opts.rel_tol * std::abs(total), opts.abs_tol, kAbsFloor});
    return total_err <= target;
  };

  while (!converged()) {
    if (eval.count() + 30 > eval.budget()) {
      std::ostringstream os;
      os << "integrate: evaluation budget exhausted (estimate " << total << ", error " << total_err << ")";
      throw QuadratureError(os.str(), total, std::numeric_limits<double>::quiet_NaN());
    }
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Cannot split further; accept what we have if the remaining error is tiny
      // relative to the total, otherwise report failure.
      if (worst.error <= 1e3 * kEps * std::abs(total)) break;
      throw QuadratureError("integrate: interval collapsed before convergence", total, worst.lo);
    }
    heap.pop();
    eval.set_partial(total);
    const auto& seg = segments[static_cast<std::size_t>(worst.segment)].first;
    Panel left = kronrod(eval, seg, worst.segment, worst.lo, mid);
    Panel right = kronrod(eval, seg, worst.segment, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum in a fixed order so the result does not depend on incremental drift.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& a, const Panel& b) {
    if (a.segment != b.segment) return a.segment < b.segment;
    return a.lo < b.lo;
  });
  double value = 0.0, error = 0.0;
  for (const auto& p : panels) {
    value += p.value;
    error += p.error;
  }
  if (!std::isfinite(value)) throw QuadratureError("integrate: non-finite result", value, lo);
  return QuadratureResult{value, error, eval.count()};
}

QuadratureResult integrate(const Function& f, double lo, double hi, double rel_tol) {
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  return integrate(f, lo, hi, opts);
}

namespace {

LogQuadratureResult scaled_integral(const Function& logf, double lo, double hi, double scale,
                                    const QuadratureOptions& opts, long extra_evals) {
  auto g = [&](double x) {
    const double l = logf(x);
    if (std::isnan(l)) return l;
    return std::exp(l - scale);
  };
  const auto r = integrate(g, lo, hi, opts);
  if (!(r.value > 0.0)) throw QuadratureError("integrate_logdomain: non-positive scaled integral", r.value, scale);
  LogQuadratureResult out;
  out.log_scale = scale;
  out.scaled_value = r.value;
  out.log_value = scale + std::log(r.value);
  out.rel_error = r.error_estimate / r.value;
  out.evaluations = r.evaluations + extra_evals;
  return out;
}

}  // namespace

LogQuadratureResult integrate_logdomain(const Function& logf, double lo, double hi, double rel_tol) {
  if (!(lo < hi)) throw InvalidInput("integrate_logdomain: empty interval");
  // Sample in a bounded parameter so infinite ends are covered.
  auto to_x = [&](double s) {
    if (std::isfinite(lo) && std::isfinite(hi)) return lo + (hi - lo) * s;
    if (std::isfinite(lo)) return lo + s / (1.0 - s);
    if (std::isfinite(hi)) return hi - (1.0 - s) / s;
    const double v = 2.0 * s - 1.0;
    return v / (1.0 - v * v);
  };
  constexpr int kSamples = 257;
  long evals = 0;
  int best = 1;
  double best_val = -kInf;
  for (int i = 1; i < kSamples; ++i) {
    const double v = logf(to_x(static_cast<double>(i) / kSamples));
    ++evals;
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  if (!std::isfinite(best_val)) throw QuadratureError("integrate_logdomain: logf not finite on samples", 0.0, lo);
  const double s_lo = static_cast<double>(best - 1) / kSamples;
  const double s_hi = static_cast<double>(best + 1) / kSamples;
  const auto sup = sup_search([&](double s) { return logf(to_x(s)); }, std::max(s_lo, 1e-12),
                              std::min(s_hi, 1.0 - 1e-12), 1e-12);
  const double peak = sup.value > best_val ? to_x(sup.argmax) : to_x(static_cast<double>(best) / kSamples);
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  opts.breakpoints = {peak};
  return scaled_integral(logf, lo, hi, std::max(sup.value, best_val), opts, evals + 80);
}

LogQuadratureResult integrate_logdomain(const Function& logf, double lo, double hi, double peak,
                                        const QuadratureOptions& opts) {
  const double scale = logf(peak);
  if (!std::isfinite(scale)) throw QuadratureError("integrate_logdomain: logf not finite at peak", 0.0, peak);
  QuadratureOptions o = opts;
  o.breakpoints.push_back(peak);
  return scaled_integral(logf, lo, hi, scale, o, 1);
}

RootResult find_root(const Function& f, double lo, double hi, double tol) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (std::isnan(fa) || std::isnan(fb)) throw NumericalError("find_root: NaN at bracket end");
  if (fa == 0.0) return RootResult{a, 0.0, 0.0};
  if (fb == 0.0) return RootResult{b, 0.0, 0.0};
  if ((fa > 0.0) == (fb > 0.0)) throw NumericalError("find_root: no sign change on bracket");

  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < 500; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * tol * std::max(1.0, std::abs(b));
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol1 || fb == 0.0) return RootResult{b, std::abs(fb), std::abs(c - b)};
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (m > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if (std::isnan(fb)) throw NumericalError("find_root: NaN inside bracket");
  }
  return RootResult{b, std::abs(fb), std::abs(c - b)};
}

SupResult sup_search(const Function& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw InvalidInput("sup_search: empty bracket");
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int iter = 0; iter < 400; ++iter) {
    if (b - a <= tol * std::max(1.0, std::abs(0.5 * (a + b)))) break;
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 >= f2 ? SupResult{x1, f1, b - a} : SupResult{x2, f2, b - a};
}

double finite_diff(const Function& f, double x0, int order, double h) {
  switch (order) {
    case 1: return (f(x0 + h) - f(x0 - h)) / (2.0 * h);
    case 2: return (f(x0 + h) - 2.0 * f(x0) + f(x0 - h)) / (h * h);
    case 3: return (f(x0 + 2 * h) - 2.0 * f(x0 + h) + 2.0 * f(x0 - h) - f(x0 - 2 * h)) / (2.0 * h * h * h);
    case 4:
      return (f(x0 + 2 * h) - 4.0 * f(x0 + h) + 6.0 * f(x0) - 4.0 * f(x0 - h) + f(x0 - 2 * h)) /
             (h * h * h * h);
    default: throw InvalidInput("finite_diff: order must be in 1..4");
  }
}

double richardson_diff(const Function& f, double x0, int order, double h) {
  return (4.0 * finite_diff(f, x0, order, 0.5 * h) - finite_diff(f, x0, order, h)) / 3.0;
}

double log_sum_exp(std::span<const double> xs) {
  double m = -kInf;
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace calabi::numerics
