#include "esym/monotone.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "esym/detail/ipow.hpp"
#include "esym/entro.hpp"

namespace esym {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Record {
  std::string indices;
  double lhs = 0.0;
  double rhs = 0.0;
  double deviation = 0.0;
  double budget = 0.0;
  std::string cause;
};

using PerSample = std::function<std::vector<Record>(const Sample&)>;

Record failure(std::string indices, const std::exception& err) {
  Record r;
  r.indices = std::move(indices);
  r.lhs = r.rhs = std::numeric_limits<double>::quiet_NaN();
  r.deviation = kInf;
  r.cause = err.what();
  return r;
}

template <class F>
Record guarded(const std::string& indices, F&& f) {
  try {
    Record r = f();
    r.indices = indices;
    return r;
  } catch (const std::exception& err) {
    return failure(indices, err);
  }
}

Record compare(const Estimate& lhs, const Estimate& rhs) {
  Record r;
  r.lhs = lhs.value;
  r.rhs = rhs.value;
  r.deviation = std::abs(lhs.value - rhs.value);
  r.budget = lhs.error + rhs.error;
  return r;
}

Record compare_relative(const Estimate& lhs, const Estimate& rhs) {
  Record r = compare(lhs, rhs);
  const double scale = std::max({std::abs(lhs.value), std::abs(rhs.value), 1e-300});
  r.deviation /= scale;
  r.budget /= scale;
  return r;
}

// Deviation of a quantity that should be nonnegative.
Record sign_record(const Estimate& v) {
  Record r;
  r.lhs = v.value;
  r.rhs = 0.0;
  r.deviation = std::max(0.0, -v.value);
  r.budget = v.error;
  return r;
}

Estimate exact(double v) { return {v, 0.0, 0}; }

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

VerificationReport run_checks(std::string name, const SamplePlan& plan, double tol,
                              const CheckOptions& opt, const PerSample& per_sample) {
  if (!(tol > 0.0)) throw Error(ErrorKind::Usage, "tolerance must be positive");
  opt.quad.validate();
  std::vector<Sample> samples(plan.n_points);
  std::vector<std::vector<Record>> results(plan.n_points);
  parallel_for(plan.n_points, opt.threads, [&](std::size_t i) {
    try {
      samples[i] = draw_sample(plan, i);
      results[i] = per_sample(samples[i]);
    } catch (const std::exception& err) {
      results[i] = {failure("sample", err)};
    }
  });

  VerificationReport rep;
  rep.property = std::move(name);
  rep.plan = plan;
  rep.tolerance = tol;
  rep.samples = plan.n_points;
  for (std::size_t i = 0; i < plan.n_points; ++i) {
    for (const Record& r : results[i]) {
      ++rep.checks;
      rep.max_abs_deviation = std::max(rep.max_abs_deviation, r.deviation);
      rep.error_budget = std::max(rep.error_budget, r.budget);
      if (!(r.deviation <= tol)) {
        ++rep.violations;
        if (rep.payload.size() < VerificationReport::kPayloadCap) {
          const auto v = samples[i].e.values();
          rep.payload.push_back(
              {i, std::vector<double>(v.begin(), v.end()), r.indices, r.lhs, r.rhs, r.deviation,
               r.cause});
        }
      }
    }
  }
  if (rep.error_budget >= tol)
    rep.notes.push_back("tolerance does not exceed the engines' combined error estimate");
  if (rep.violations > rep.payload.size())
    rep.notes.push_back("violation payload truncated to " +
                        std::to_string(VerificationReport::kPayloadCap) + " entries");
  return rep;
}

// Some order-m multi-index over 1..d with index sum K (m <= K <= m d).
MultiIndex representative(int d, int m, int K) {
  std::vector<int> idx(m, 1);
  int extra = K - m;
  for (int q = m - 1; q >= 0 && extra > 0; --q) {
    const int add = std::min(extra, d - 1);
    idx[q] += add;
    extra -= add;
  }
  return MultiIndex(std::move(idx), d);
}

std::string label(const char* prefix, const MultiIndex& idx) {
  return std::string(prefix) + idx.str();
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// d^2 H / de_l de_m computed without the index-sum reduction where possible.
Estimate second_derivative_by_split(const ElemSymCoords& e, int l, int m,
                                    const QuadratureSpec& quad) {
  const MultiIndex idx({l, m}, e.d());
  if (l + m > 2) return index_resolved_derivative(e, idx, FdTarget::H, quad);
  try {
    return dH_multi(e, idx, quad, DerivMethod::Contour);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::Geometry && err.kind() != ErrorKind::NumericalFailure) throw;
    return dH_multi(e, idx, quad, DerivMethod::Residue);
  }
}

Estimate negated(Estimate v) {
  v.value = -v.value;
  return v;
}

}  // namespace

VerificationReport validate_fd_oracle(double tol) {
  struct Anchor {
    ElemSymCoords e;
    MultiIndex idx;
    FdTarget target;
    double expected;
    const char* name;
  };
  // dQ/de_2 at (1, 3/16) = \int t^2 / (t + 1/4)^2 (t + 3/4)^2 dt in closed form.
  const double q_anchor = 0.704163133995671;
  const std::vector<Anchor> anchors = {
      {{1.0, 0.25}, MultiIndex({2}, 2), FdTarget::H, 2.0, "H (2) at (1, 1/4)"},
      {{1.0, 0.1875}, MultiIndex({2}, 2), FdTarget::Q, q_anchor, "Q (2) at (1, 3/16)"},
      {{1.0, 0.1875}, MultiIndex({1, 1}, 2), FdTarget::H, -q_anchor, "H (1,1) at (1, 3/16)"},
      {{2.0, 1.0}, MultiIndex({2}, 2), FdTarget::H, 1.0, "H (2) at (2, 1)"},
  };
  VerificationReport rep;
  rep.property = "fd-oracle";
  rep.tolerance = tol;
  rep.samples = anchors.size();
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const Anchor& a = anchors[i];
    Record r = guarded(a.name, [&] {
      return compare(exact(finite_difference_derivative(a.e, a.idx, a.target)), exact(a.expected));
    });
    ++rep.checks;
    rep.max_abs_deviation = std::max(rep.max_abs_deviation, r.deviation);
    if (!(r.deviation <= tol)) {
      ++rep.violations;
      const auto v = a.e.values();
      rep.payload.push_back({i, std::vector<double>(v.begin(), v.end()), r.indices, r.lhs, r.rhs,
                             r.deviation, r.cause});
    }
  }
  return rep;
}

Estimate index_resolved_derivative(const ElemSymCoords& e, const MultiIndex& idx, FdTarget target,
                                   const QuadratureSpec& quad) {
  const int m = idx.order();
  const int d = e.d();
  if (m < 2) throw Error(ErrorKind::Usage, "index-resolved route needs order >= 2");
  if (!e.in_positive_cone())
    throw Error(ErrorKind::Domain, "index-resolved route needs every e_k > 0");
  const int j = idx.indices()[0];
  const int K_rest = idx.index_sum() - j;
  if (K_rest < 2)
    throw Error(ErrorKind::Usage, "reduced index sum is 1; no integral form for " + idx.str());
  // Order-n base derivative: coef * \int t^power / P^pole dt.
  const int n = m - 1;
  int pole;
  double coef;
  if (target == FdTarget::H) {
    pole = n;
    coef = (n % 2 == 1 ? 1.0 : -1.0) * factorial(n - 1);
  } else {
    pole = n + 1;
    coef = -(n % 2 == 0 ? 1.0 : -1.0) * factorial(n);
  }
  const int power = pole * d - K_rest;
  const int tail_power = pole * d - 2 - power;
  const double h = 1e-20 * std::max(1.0, std::abs(e(j)));
  std::vector<Complex> c(d);
  for (int k = 1; k <= d; ++k) c[k - 1] = Complex(e(k), k == j ? h : 0.0);
  const double scale = coef / h;

  auto head = [&](double t) {
    Complex den = 1.0;
    for (const Complex& ck : c) den = den * t + ck;
    return scale * (detail::ipow(t, power) / detail::ipow(den, pole)).imag();
  };
  auto tail = [&](double u) {
    Complex den = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) den = den * u + *it;
    den = den * u + 1.0;
    return scale * (detail::ipow(u, tail_power) / detail::ipow(den, pole)).imag();
  };
  return integrate_split_half_line(head, tail, quad);
}

VerificationReport check_prop1(const SamplePlan& plan, double tol, const CheckOptions& opt) {
  return run_checks("prop1", plan, tol, opt, [&](const Sample& s) {
    std::vector<Record> out;
    const ElemSymCoords& e = s.e;
    for (int k = 2; k <= e.d(); ++k) {
      for (int l = 1; 2 * l <= k; ++l) {
        const int m = k - l;
        out.push_back(guarded("k=" + std::to_string(k) + " split (" + std::to_string(l) + "," +
                                  std::to_string(m) + ")",
                              [&] {
                                return compare(
                                    negated(dQ_dek(e, k, opt.quad, DerivMethod::Fannes)),
                                    second_derivative_by_split(e, l, m, opt.quad));
                              }));
      }
    }
    return out;
  });
}

VerificationReport check_prop1_fd(const SamplePlan& plan, double tol, const CheckOptions& opt) {
  return run_checks("prop1-fd", plan, tol, opt, [&](const Sample& s) {
    std::vector<Record> out;
    const ElemSymCoords& e = s.e;
    for (int k = 2; k <= e.d(); ++k) {
      const MultiIndex qk({k}, e.d());
      out.push_back(guarded("-FD[Q](" + std::to_string(k) + ") vs H''", [&] {
        const double fd = finite_difference_derivative(e, qk, FdTarget::Q);
        return compare(exact(-fd), second_derivative_by_split(e, 1, k - 1, opt.quad));
      }));
      for (int l = 1; 2 * l <= k; ++l) {
        const MultiIndex hl({l, k - l}, e.d());
        out.push_back(guarded("-dQ(" + std::to_string(k) + ") vs FD[H]" + hl.str(), [&] {
          const double fd = finite_difference_derivative(e, hl, FdTarget::H);
          return compare(negated(dQ_dek(e, k, opt.quad, DerivMethod::Fannes)), exact(fd));
        }));
      }
    }
    return out;
  });
}

VerificationReport check_prop2_signs(const SamplePlan& plan, int max_order, double tol,
                                     const CheckOptions& opt) {
  if (max_order < 1) throw Error(ErrorKind::Usage, "max_order must be >= 1");
  return run_checks("prop2", plan, tol, opt, [&](const Sample& s) {
    std::vector<Record> out;
    const ElemSymCoords& e = s.e;
    const int d = e.d();
    for (int k = 2; k <= d; ++k) {
      out.push_back(guarded("dH/de_" + std::to_string(k),
                            [&] { return sign_record(dH_dek_fannes(e, k, opt.quad)); }));
    }
    for (int m = 2; m <= max_order; ++m) {
      const double sign = m % 2 == 0 ? -1.0 : 1.0;
      for (int K = m; K <= m * d; ++K) {
        const MultiIndex idx = representative(d, m, K);
        out.push_back(guarded(label("H", idx), [&] {
          Estimate v = dH_multi(e, idx, opt.quad, DerivMethod::Fannes);
          v.value *= sign;
          return sign_record(v);
        }));
      }
    }
    return out;
  });
}

VerificationReport check_prop3_index_sum(const SamplePlan& plan, int m, double tol,
                                         const CheckOptions& opt) {
  if (m < 2) throw Error(ErrorKind::Usage, "index-sum check needs order >= 2");
  VerificationReport rep = run_checks("prop3", plan, tol, opt, [&](const Sample& s) {
    std::vector<Record> out;
    const ElemSymCoords& e = s.e;
    const int d = e.d();
    std::map<int, std::vector<MultiIndex>> groups;
    for (const MultiIndex& idx : all_multi_indices(d, m)) groups[idx.index_sum()].push_back(idx);
    for (const FdTarget target : {FdTarget::H, FdTarget::Q}) {
      const char* tname = target == FdTarget::H ? "H" : "Q";
      for (const auto& [K, members] : groups) {
        std::string name = std::string(tname) + " K=" + std::to_string(K) + " {";
        for (std::size_t i = 0; i < members.size(); ++i)
          name += (i ? "," : "") + members[i].str();
        name += "}";
        out.push_back(guarded(name, [&] {
          const Estimate reduced = target == FdTarget::H ? dH_multi(e, members[0], opt.quad)
                                                         : dQ_multi(e, members[0], opt.quad);
          double lo = reduced.value, hi = reduced.value, budget = reduced.error;
          for (const MultiIndex& idx : members) {
            if (idx.index_sum() - idx.indices()[0] < 2) continue;
            const Estimate v = index_resolved_derivative(e, idx, target, opt.quad);
            lo = std::min(lo, v.value);
            hi = std::max(hi, v.value);
            budget = std::max(budget, v.error + reduced.error);
          }
          // Values reach 1e10 near the simplex faces; spread is measured on
          // the scale max(1, |value|).
          const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
          Record r;
          r.lhs = lo;
          r.rhs = hi;
          r.deviation = (hi - lo) / scale;
          r.budget = budget / scale;
          return r;
        }));
      }
    }
    return out;
  });
  rep.notes.push_back("order " + std::to_string(m) + ", spread relative to max(1, |value|)");
  std::map<int, std::vector<MultiIndex>> groups;
  for (const MultiIndex& idx : all_multi_indices(plan.d_max, m)) groups[idx.index_sum()].push_back(idx);
  std::string layout = "groups at d=" + std::to_string(plan.d_max) + ":";
  for (const auto& [K, members] : groups) {
    layout += " K=" + std::to_string(K) + " {";
    for (std::size_t i = 0; i < members.size(); ++i) layout += (i ? "," : "") + members[i].str();
    layout += "}";
  }
  rep.notes.push_back(layout);
  return rep;
}

VerificationReport check_prop4_reduction(const SamplePlan& plan, double tol,
                                         const CheckOptions& opt) {
  QuadratureSpec tight = opt.quad;
  tight.rel_tol = std::min(tight.rel_tol, 1e-13);
  tight.abs_tol = std::min(tight.abs_tol, 1e-13);
  return run_checks("prop4", plan, tol, opt, [&](const Sample& s) {
    std::vector<Record> out;
    const ElemSymCoords& e = s.e;
    const int d = e.d();
    for (int m = 2; m <= 3; ++m) {
      for (const MultiIndex& idx : all_multi_indices(d, m)) {
        out.push_back(guarded(label("H", idx), [&] {
          const auto ind = idx.indices();
          const int first = ind.back();
          const MultiIndex rest(std::vector<int>(ind.begin(), ind.end() - 1), d);
          auto g = [&](const ElemSymCoords& x) { return dH_dek(x, first, DerivMethod::Auto, tight).value; };
          const double fd = fd_derivative(g, e, rest, m == 2 ? 1e-4 : 1e-3);
          return compare_relative(dH_multi(e, idx, opt.quad), exact(fd));
        }));
      }
    }
    return out;
  });
}

VerificationReport check_repeated_coords(const SamplePlan& plan, double tol,
                                         const CheckOptions& opt) {
  return run_checks("repeated-coords", plan, tol, opt, [&](const Sample& s) {
    std::vector<Record> out;
    if (s.roots.empty()) return out;
    for (int m = 2; m <= 3; ++m) {
      out.push_back(guarded("m=" + std::to_string(m), [&] {
        std::vector<double> rep;
        for (double x : s.roots)
          for (int q = 0; q < m; ++q) rep.push_back(x);
        const ElemSymCoords direct = elemsym_from_roots(make_spectrum(rep));
        const ElemSymCoords conv = repeated_spectrum_coords(s.e, m);
        Record r;
        for (int k = 1; k <= direct.d(); ++k) {
          const double dev = std::abs(direct(k) - conv(k)) / std::max(1.0, std::abs(direct(k)));
          if (dev >= r.deviation) {
            r.deviation = dev;
            r.lhs = conv(k);
            r.rhs = direct(k);
          }
        }
        return r;
      }));
    }
    return out;
  });
}

VerificationReport check_engine_agreement(const SamplePlan& plan, double tol,
                                          const CheckOptions& opt) {
  return run_checks("engines", plan, tol, opt, [&](const Sample& s) {
    std::vector<Record> out;
    const ElemSymCoords& e = s.e;
    out.push_back(guarded("k=1 residue/contour", [&] {
      return compare(dH_de1(e, opt.quad), dH_dek_contour(e, 1, opt.quad).estimate);
    }));
    for (int k = 2; k <= e.d(); ++k) {
      out.push_back(guarded("k=" + std::to_string(k) + " fannes/residue/contour", [&] {
        const Estimate f = dH_dek_fannes(e, k, opt.quad);
        const Estimate r = dH_dek_residue(e, k);
        const Estimate c = dH_dek_contour(e, k, opt.quad).estimate;
        Record out_r = compare(f, r);
        const Record fc = compare(f, c), rc = compare(r, c);
        if (fc.deviation > out_r.deviation) out_r = fc;
        if (rc.deviation > out_r.deviation) out_r = rc;
        out_r.budget = f.error + r.error + c.error;
        return out_r;
      }));
    }
    return out;
  });
}

VerificationReport check_complete_monotonicity(const SamplePlan& plan, int k, int depth,
                                               double tol, const CheckOptions& opt) {
  if (depth < 1) throw Error(ErrorKind::Usage, "depth must be >= 1");
  if (k < 2) throw Error(ErrorKind::Usage, "complete monotonicity is checked for k >= 2");
  if (!(opt.grid_step > 0.0)) throw Error(ErrorKind::Usage, "grid step must be positive");
  VerificationReport rep = run_checks("cm", plan, tol, opt, [&](const Sample& s) {
    std::vector<Record> out;
    const ElemSymCoords& e = s.e;
    const int d = e.d();
    if (d < k) return out;
    const std::string fname = "dH/de_" + std::to_string(k);

    // Analytic: (-1)^j d^j f >= 0 for each reachable index sum.
    out.push_back(guarded(fname, [&] { return sign_record(dH_dek_fannes(e, k, opt.quad)); }));
    for (int j = 1; j <= depth; ++j) {
      const double sign = j % 2 == 0 ? 1.0 : -1.0;
      for (int Kp = j; Kp <= j * d; ++Kp) {
        const MultiIndex inner = representative(d, j, Kp);
        std::vector<int> full(inner.indices().begin(), inner.indices().end());
        full.push_back(k);
        const MultiIndex idx(full, d);
        out.push_back(guarded(label("analytic H", idx), [&] {
          Estimate v = dH_multi(e, idx, opt.quad, DerivMethod::Fannes);
          v.value *= sign;
          return sign_record(v);
        }));
      }
    }

    // Discrete: forward differences along upward axis steps.
    std::vector<double> h(d);
    for (int a = 1; a <= d; ++a) h[a - 1] = opt.grid_step * e(a);
    std::map<std::vector<int>, Estimate> cache;
    auto f_at = [&](const std::vector<int>& shift) {
      auto it = cache.find(shift);
      if (it != cache.end()) return it->second;
      ElemSymCoords x = e;
      for (int a = 1; a <= d; ++a) x(a) += shift[a - 1] * h[a - 1];
      const Estimate v = dH_dek_fannes(x, k, opt.quad);
      cache.emplace(shift, v);
      return v;
    };
    for (int j = 1; j <= depth; ++j) {
      const double sign = j % 2 == 0 ? 1.0 : -1.0;
      for (const MultiIndex& axes : all_multi_indices(d, j)) {
        out.push_back(guarded(label("forward difference", axes), [&] {
          const auto ax = axes.indices();
          Estimate delta{0.0, 0.0, 0};
          for (unsigned mask = 0; mask < (1u << j); ++mask) {
            std::vector<int> shift(d, 0);
            int bits = 0;
            for (int q = 0; q < j; ++q) {
              if ((mask >> q) & 1u) {
                ++shift[ax[q] - 1];
                ++bits;
              }
            }
            const Estimate v = f_at(shift);
            delta.value += ((j - bits) % 2 == 0 ? 1.0 : -1.0) * v.value;
            delta.error += v.error;
          }
          delta.value *= sign;
          return sign_record(delta);
        }));
      }
    }
    return out;
  });
  if (plan.d_min < k)
    rep.notes.push_back("samples with d < " + std::to_string(k) + " contribute no checks");
  return rep;
}

VerificationReport check_positivity(const SamplePlan& plan, double tol, const CheckOptions& opt) {
  return run_checks("positivity", plan, tol, opt, [&](const Sample& s) {
    std::vector<Record> out;
    ElemSymCoords e = s.e;
    if (s.roots.empty()) e(1) = 1.0;
    const ConeClass cls = cone_membership(e);
    if (cls == ConeClass::ProbabilityRegion || cls == ConeClass::Boundary)
      out.push_back(guarded("H", [&] { return sign_record(entropy_from_elemsym(e)); }));
    if (cls != ConeClass::OutsideCone)
      out.push_back(guarded("Q", [&] { return sign_record(subentropy_from_elemsym(e)); }));
    return out;
  });
}

}  // namespace esym
