#include "gausstail/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "gausstail/errors.hpp"

namespace gausstail {

namespace {

// 21-point Kronrod abscissae/weights and the embedded 10-point Gauss weights (QUADPACK qk21).
constexpr double kXgk[11] = {0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
                             0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
                             0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
                             0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
                             0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
                             0.0};
constexpr double kWgk[11] = {0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
                             0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
                             0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
                             0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
                             0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
                             0.149445554002916905664936468389821};
constexpr double kWg[5] = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                           0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                           0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  bool splittable = true;
};

Panel gauss_kronrod21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::abs(resk);
  double fv1[10];
  double fv2[10];
  for (int j = 0; j < 5; ++j) {
    const int jtw = 2 * j + 1;
    const double x = half * kXgk[jtw];
    const double f1 = f(center - x);
    const double f2 = f(center + x);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 5; ++j) {
    const int jtwm1 = 2 * j;
    const double x = half * kXgk[jtwm1];
    const double f1 = f(center - x);
    const double f2 = f(center + x);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - reskh);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  Panel p{a, b, resk * half, std::abs((resk - resg) * half), true};
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  if (resasc != 0.0 && p.error != 0.0) p.error = resasc * std::min(1.0, std::pow(200.0 * p.error / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) p.error = std::max(50.0 * kEps * resabs, p.error);
  if (!std::isfinite(p.value) || !std::isfinite(p.error)) {
    throw AccuracyFailure("non-finite integrand value on [" + std::to_string(a) + ", " + std::to_string(b) + "]",
                          p.value, std::numeric_limits<double>::infinity());
  }
  const double mid = 0.5 * (a + b);
  p.splittable = mid > a && mid < b && (b - a) > 64.0 * kEps * std::max(std::abs(a), std::abs(b));
  return p;
}

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

}  // namespace

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

QuadResult integrate(const Integrand& f, std::span<const double> breaks, const QuadOptions& opts) {
  if (breaks.size() < 2) throw UsageError("integrate needs at least two breakpoints");
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    if (!(breaks[i] >= breaks[i - 1])) throw UsageError("integration breakpoints must be nondecreasing");
  }

  std::priority_queue<Panel, std::vector<Panel>, ByError> active;
  std::vector<Panel> frozen;
  QuadResult out;
  double total_value = 0.0;
  double total_error = 0.0;

  for (std::size_t i = 1; i < breaks.size(); ++i) {
    if (breaks[i] == breaks[i - 1]) continue;
    Panel p = gauss_kronrod21(f, breaks[i - 1], breaks[i]);
    out.evaluations += 21;
    total_value += p.value;
    total_error += p.error;
    if (p.splittable) {
      active.push(p);
    } else {
      frozen.push_back(p);
    }
  }

  auto converged = [&] { return total_error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total_value)); };

  int panels = static_cast<int>(active.size() + frozen.size());
  while (!converged() && !active.empty() && panels < opts.max_intervals) {
    Panel worst = active.top();
    active.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gauss_kronrod21(f, worst.a, mid);
    Panel right = gauss_kronrod21(f, mid, worst.b);
    out.evaluations += 42;
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    for (Panel* child : {&left, &right}) {
      if (child->splittable) {
        active.push(*child);
      } else {
        frozen.push_back(*child);
      }
    }
    ++panels;
  }

  // Re-sum in position order so the result does not depend on queue history.
  std::vector<Panel> all = std::move(frozen);
  while (!active.empty()) {
    all.push_back(active.top());
    active.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum value;
  CompensatedSum error;
  for (const Panel& p : all) {
    value.add(p.value);
    error.add(p.error);
  }
  out.value = value.value();
  out.error = error.value();

  const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(out.value));
  const double accept = opts.accept_abs >= 0.0 ? std::max(opts.accept_abs, target) : target;
  if (out.error > accept) {
    throw AccuracyFailure("quadrature did not converge: error estimate " + std::to_string(out.error) +
                              " exceeds tolerance " + std::to_string(accept),
                          out.value, out.error);
  }
  return out;
}

std::vector<double> geometric_breaks(double lo, double hi, double ratio) {
  std::vector<double> out{lo};
  if (!(lo > 0.0) || !(hi > lo) || !(ratio > 1.0)) {
    if (hi > lo) out.push_back(hi);
    return out;
  }
  double x = lo * ratio;
  while (x < hi) {
    out.push_back(x);
    x *= ratio;
  }
  out.push_back(hi);
  return out;
}

}  // namespace gausstail
