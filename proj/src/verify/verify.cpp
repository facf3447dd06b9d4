#include "ecf/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "ecf/cf_core.hpp"
#include "ecf/errors.hpp"
#include "ecf/families.hpp"
#include "ecf/integral.hpp"
#include "ecf/quadrature.hpp"
#include "ecf/reference.hpp"

namespace ecf {
namespace {

constexpr long kBits = 128;

Rational R(long n, long d = 1) { return {Integer(n), Integer(d)}; }
HPFloat H(const Rational& r, long bits = kBits) { return HPFloat(r, bits); }
double dist(const HPFloat& a, const HPFloat& b) { return (a - b).abs().to_double(); }
double rel(const HPFloat& a, const HPFloat& b) { return relative_error(a, b).to_double(); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Decimal digits of v >= 0, truncated after `places`.
std::string truncated(const Rational& v, int places) {
  Integer scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  std::string s = Integer(v.num() * scale / v.den()).get_str();
  if (static_cast<int>(s.size()) <= places) s.insert(0, places + 1 - s.size(), '0');
  s.insert(s.size() - places, ".");
  return s;
}

std::string truncated(const HPFloat& v, int places) {
  Integer z;
  const long e = mpfr_get_z_2exp(z.get_mpz_t(), v.get());
  return truncated(e >= 0 ? Rational(Integer(z << e)) : Rational(z, Integer(Integer(1) << -e)), places);
}

struct Ctx {
  Ctx(const VerifyOptions& o, std::uint64_t seed) : opt(o), rng(seed) {}

  const VerifyOptions& opt;
  std::mt19937_64 rng;
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note("FAILED: " + what);
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  int trials(int shallow, int deep) const { return opt.deep ? deep : shallow; }

  // Rational m, n with 0 < m < n.
  std::pair<Rational, Rational> mn() {
    const Rational n = R(uniform(2, 60), uniform(1, 7));
    return {n * R(uniform(1, 97), 100), n};
  }
};

void ln2(Ctx& c) {
  const auto cv = convergents(log_of_fraction(2, 1), 3);
  const Rational want[] = {R(2, 3), R(9, 13), R(262, 378)};
  const char* printed[] = {"0.666666", "0.6923", "0.693121"};
  const int places[] = {6, 4, 6};
  for (int k = 1; k <= 3; ++k) {
    c.require(cv[k].p * want[k - 1].den() == want[k - 1].num() * cv[k].q, "depth " + std::to_string(k));
    c.require(truncated(cv[k].value(), places[k - 1]) == printed[k - 1], std::string("decimal ") + printed[k - 1]);
  }
  c.require(cv[3].p == 262 && cv[3].q == 378, "unreduced 262/378");
  const double err = dist(H(cv[3].value()), ln_ref(R(2), kBits));
  c.note("|262/378 - ln 2| = " + sci(err));
  c.require(err <= 3e-5, "error <= 3e-5");
}

void ln32(Ctx& c) {
  const auto cv = convergents(log_of_fraction(3, 2), 3);
  c.require(cv[1].value() == R(2, 5), "depth 1 = 2/5");
  c.require(truncated(cv[2].value(), 5) == "0.40540", "depth 2 truncates to 0.40540");
  const HPFloat v3 = H(cv[3].value());
  const double off = dist(v3, HPFloat::parse("0.4054654", kBits));
  c.note("depth 3 = " + cv[3].value().to_string() + " = " + truncated(cv[3].value(), 8) + ", off printed 0.4054654 by " + sci(off));
  c.require(off <= 5e-8, "depth 3 within 5e-8 of 0.4054654");
  const HPFloat ln = ln_ref(R(3, 2), kBits);
  c.require(truncated(ln, 9) == "0.405465108", "ln(3/2) digits");
  const double err = dist(v3, ln);
  c.note("|depth 3 - ln(3/2)| = " + sci(err));
  c.require(err <= 1e-6, "depth 3 within 1e-6 of ln(3/2)");
}

void quarter_pi(Ctx& c) {
  const auto cv = convergents(atan_cf_spec(1, 1), 4);
  c.require(cv[1].value() == 1 && cv[2].value() == R(3, 4) && cv[3].value() == R(19, 24), "1, 3/4, 19/24");
  const HPFloat q = pi_ref(kBits).scaled(-2);
  const double e3 = dist(H(cv[3].value()), q), e4 = dist(H(cv[4].value()), q);
  c.note("depth 3 error " + sci(e3) + ", depth 4 error " + sci(e4));
  c.require(e3 <= 7e-3, "depth 3 within 7e-3");
  c.require(e4 < 1e-3, "depth 4 error < 1e-3");
}

void sixth_pi(Ctx& c) {
  const HPFloat target = pi_ref(kBits) / (HPFloat(6, kBits) * sqrt_hp(HPFloat(3, kBits)));
  c.require(truncated(target, 7) == "0.3022998", "digits 0.3022998");
  const auto cv = convergents(atan_cf_spec(3, 3), 3);
  c.require(cv[1].value() == R(1, 3) && cv[2].value() == R(3, 10) && cv[3].value() == R(49, 162), "1/3, 3/10, 49/162");
  const double err = dist(H(cv[3].value()), target);
  c.note("|49/162 - pi/(6 sqrt 3)| = " + sci(err));
  c.require(err <= 2e-4, "within 2e-4");
}

void machin(Ctx& c) {
  const HPFloat s = eval_value(atan_cf_spec(2, 1), 40, kBits) + eval_value(atan_cf_spec(3, 1), 40, kBits);
  const double err = dist(s, pi_ref(kBits).scaled(-2));
  c.note("error " + sci(err));
  c.require(err <= 1e-12, "within 1e-12 at depth 40");
}

void tables(Ctx& c) {
  int bad = 0;
  const int n_trials = c.trials(20, 200);
  for (int t = 0; t < n_trials; ++t) {
    const auto [m, n] = c.mn();
    const Rational m2 = m * m, n2 = n * n;
    const auto l = convergents(log_cf_spec(n, m2), 5);
    bad += l[1].value() != R(2) * m / n;
    bad += l[2].value() != R(6) * m * n / (R(3) * n2 - m2);
    bad += l[3].value() != (R(30) * m * n2 - R(8) * m * m2) / (R(15) * n * n2 - R(9) * m2 * n);
    bad += l[4].value() != (R(210) * m * n * n2 - R(110) * m * m2 * n) / (R(105) * n2 * n2 - R(90) * m2 * n2 + R(9) * m2 * m2);
    bad += l[5].value() != (R(1890) * m * n2 * n2 - R(1470) * m * m2 * n2 + R(128) * m * m2 * m2) /
                               (R(945) * n * n2 * n2 - R(1050) * m2 * n * n2 + R(225) * m2 * m2 * n);
    const auto a = convergents(atan_cf_spec(n, m2), 4);
    bad += a[1].value() != m / n;
    bad += a[2].value() != R(3) * m * n / (R(3) * n2 + m2);
    bad += a[3].value() != (R(15) * m * n2 + R(4) * m * m2) / (R(15) * n * n2 + R(9) * m2 * n);
    bad += a[4].value() != (R(105) * m * n * n2 + R(55) * m * m2 * n) / (R(105) * n2 * n2 + R(90) * m2 * n2 + R(9) * m2 * m2);
  }
  c.note(std::to_string(n_trials) + " parameter sets");
  c.require(bad == 0, std::to_string(bad) + " table mismatches");
}

void differences(Ctx& c) {
  int bad = 0;
  const int n_trials = c.trials(20, 100);
  for (int t = 0; t < n_trials; ++t) {
    const auto [m, n] = c.mn();
    for (FamilyKind kind : {FamilyKind::LogNM, FamilyKind::AtanNM}) {
      const CFTermSeq cf = kind == FamilyKind::LogNM ? log_cf_spec(n, m * m) : atan_cf_spec(n, m * m);
      const auto cv = convergents(cf, 200);
      for (std::size_t k = 2; k <= 20; ++k)
        bad += difference_closed_form(k, n, m * m, kind) != cv[k].value() - cv[k - 1].value();
      bad += !determinant_identity_check(cv, cf);
    }
  }
  c.note(std::to_string(n_trials) + " parameter sets, k <= 20, determinants to 200");
  c.require(bad == 0, std::to_string(bad) + " mismatches");
}

const QuadraticForm& form_at(int i) {
  static const QuadraticForm forms[] = {{1, 2, 1}, {1, 3, 2}, {1, 1, -1}, {1, 2, -3},
                                        {R(3, 2), 4, R(5, 2)}, {2, 3, R(-1, 2)}};
  return forms[i];
}

void ratio_fractions(Ctx& c) {
  double worst = 0;
  for (int i = 0; i < 4; ++i) {
    const QuadraticForm& f = form_at(i);
    std::vector<HPFloat> in;
    for (unsigned n = 0; n <= 3; ++n) in.push_back(quad_integral(n, f, AtRoot{}, HPFloat::parse("1e-40", 192)).value);
    for (unsigned n = 1; n <= 3; ++n) {
      const HPFloat want = HPFloat(Rational(static_cast<long>(n)) * f.a() * f.a(), 192) * in[n - 1] / in[n];
      worst = std::max(worst, rel(eval_backward(ratio_cf_spec(n, f), 200, kBits), want));
    }
    worst = std::max(worst, rel(completed_cf_value(f, 200, kBits).value, HPFloat(f.a(), 192) / in[0]));
  }
  c.note("worst relative deviation " + sci(worst));
  c.require(worst <= 1e-15, "within 1e-15");
}

void integrals(Ctx& c) {
  const auto start = std::chrono::steady_clock::now();
  const unsigned n_max = c.opt.deep ? 12 : 8;
  double worst = 0;
  for (int i = 0; i < 6; ++i) {
    const QuadraticForm& f = form_at(i);
    const double xs = roots(f).xstar.to_double();
    std::vector<UpperLimit> limits = {AtRoot{}, R(static_cast<long>(xs * 6e5), 1'000'000),
                                      R(static_cast<long>(xs * 9.7e5), 1'000'000)};
    if (c.opt.deep)
      for (int j = 0; j < 4; ++j) limits.emplace_back(R(static_cast<long>(xs * c.uniform(1, 999) * 1e3), 1'000'000));
    for (unsigned n = 0; n <= n_max; ++n)
      for (const UpperLimit& x : limits) {
        const HPFloat scale = quad_integral(n, f, x, HPFloat::parse("1e-8", 160)).value.abs();
        const HPFloat q = quad_integral(n, f, x, scale * HPFloat::parse("1e-25", 160)).value;
        const HPFloat v = std::holds_alternative<AtRoot>(x) ? integral_at_root(n, f) : integral_to(n, f, x);
        worst = std::max(worst, rel(v, q));
      }
  }
  c.note("n <= " + std::to_string(n_max) + ", worst relative deviation " + sci(worst));
  c.require(worst <= 1e-10, "within 1e-10");

  int bad = 0;
  for (int i = 0; i < 6; ++i) {
    const QuadraticForm& f = form_at(i);
    const Rational a = f.a(), b = f.b(), cc = f.c();
    const auto t = coeff_table(4, f);
    bad += t[2].curly != R(3) * b * b / (R(2) * cc * cc) - a * a / (R(2) * cc);
    bad += t[2].frak != R(3) * a * b / (R(2) * cc * cc);
    bad += t[3].curly != R(15) * b.pow(3) / (R(6) * cc.pow(3)) - R(9) * a * a * b / (R(6) * cc * cc);
    bad += t[3].frak != R(15) * a * b * b / (R(6) * cc.pow(3)) - R(4) * a.pow(3) / (R(6) * cc * cc);
    bad += t[4].curly != R(105) * b.pow(4) / (R(24) * cc.pow(4)) - R(90) * a * a * b * b / (R(24) * cc.pow(3)) +
                             R(9) * a.pow(4) / (R(24) * cc * cc);
    bad += t[4].frak != R(105) * a * b.pow(3) / (R(24) * cc.pow(4)) - R(55) * a.pow(3) * b / (R(24) * cc.pow(3));
  }
  c.require(bad == 0, "coefficient table for n <= 4");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.require(secs < 60, "runtime under one minute");
}

void degenerate(Ctx& c) {
  const auto cv = convergents(degenerate_cf_spec(), 1000);
  bool ok = cv[1].value() == R(2, 3) && cv[2].value() == R(6, 11);
  for (std::size_t k = 1; k <= 1000; ++k) ok = ok && cv[k].value().sign() > 0 && cv[k].value() < cv[k - 1].value();
  c.require(ok, "truncations positive and decreasing to depth 1000");
  bool tails = true;
  for (std::size_t k = 1; k <= 10; ++k) {
    HPFloat prev = degenerate_tail(k, 0, kBits);
    for (std::size_t d = 1; d <= 1000; ++d) {
      HPFloat cur = degenerate_tail(k, d, kBits);
      tails = tails && cur < prev && cur > HPFloat(static_cast<long>(k), kBits);
      prev = std::move(cur);
    }
  }
  c.require(tails, "tails decreasing and above k for k <= 10");
  c.note("depth 1000 value " + truncated(cv[1000].value(), 6));
}

void brouncker(Ctx& c) {
  const HPFloat limit = HPFloat(4, kBits) / pi_ref(kBits) - HPFloat(1, kBits);
  const double err = dist(eval_backward(brouncker_cf_spec(), 400, kBits), limit);
  c.note("empirical identity 4/pi - 1; depth-400 error " + sci(err));
  c.require(err <= 1e-6, "depth 400 within 1e-6");
}

void oracle_agreement(Ctx& c) {
  double worst = 0;
  const int n_trials = c.trials(30, 300);
  const HPFloat tol = HPFloat::parse("1e-20", 160);
  for (int t = 0; t < n_trials; ++t) {
    const long q = c.uniform(1, 50), p = q + c.uniform(1, 200);
    const CFTermSeq l = log_of_fraction(p, q);
    worst = std::max(worst, rel(eval_value(l, auto_terms(l, tol), 160), ln_ref(R(p, q), 160)));
    const long m = c.uniform(1, 200), n = c.uniform(1, 200);
    const CFTermSeq a = atan_cf_spec(n, m * m);
    worst = std::max(worst, rel(eval_value(a, auto_terms(a, tol), 160), atan_ref(R(m, n), 160)));
  }
  c.note(std::to_string(2 * n_trials) + " arguments, worst relative error " + sci(worst));
  c.require(worst <= 1e-18, "within 1e-18 at tolerance 1e-20");
}

void batch_determinism(Ctx& c) {
  std::vector<CFTermSeq> cfs;
  const int n_cf = c.trials(32, 256);
  for (int i = 0; i < n_cf; ++i) cfs.push_back(log_of_fraction(c.uniform(2, 900), 1));
  std::vector<EvalRequest> req;
  for (const CFTermSeq& cf : cfs) req.push_back({&cf, static_cast<std::size_t>(c.uniform(1, 300))});
  const auto serial = eval_batch(req, kBits, Execution::Serial);
  const auto parallel = eval_batch(req, kBits, Execution::Parallel);
  bool same = true;
  for (std::size_t i = 0; i < req.size(); ++i) same = same && serial[i] == parallel[i];

  QuadratureOptions so;
  so.exec = Execution::Serial;
  const HPFloat tol = HPFloat::parse("1e-30", 160);
  const auto qs = quad_integral(5, form_at(3), AtRoot{}, tol, so);
  const auto qp = quad_integral(5, form_at(3), AtRoot{}, tol);
  same = same && qs.value == qp.value && qs.est_error == qp.est_error;
  c.note(std::to_string(req.size()) + " batch evaluations and one quadrature");
  c.require(same, "serial and parallel results bit-identical");
}

void trig_signs(Ctx& c) {
  bool ok = true;
  for (int i : {2, 3, 5}) {
    const auto t = coeff_table(30, form_at(i));
    for (unsigned n = 1; n <= 30; ++n) {
      const int s = n % 2 == 0 ? 1 : -1;
      ok = ok && t[n].curly.sign() == s && t[n].frak.sign() == s;
    }
  }
  c.note("(-1)^n curly and (-1)^n frak for n <= 30 on three c < 0 forms");
  c.require(ok, "all positive");
}

struct Check {
  int id;
  const char* name;
  bool empirical;
  void (*run)(Ctx&);
};

const std::vector<Check>& checks() {
  static const std::vector<Check> list = {
      {1, "ln 2 convergents", false, ln2},
      {2, "ln(3/2) convergents", false, ln32},
      {3, "pi/4 convergents", false, quarter_pi},
      {4, "pi/(6 sqrt 3) convergents", false, sixth_pi},
      {5, "arctan split of pi/4", false, machin},
      {6, "closed-form convergent tables", false, tables},
      {7, "difference law and determinant identity", false, differences},
      {8, "ratio and completed fractions", false, ratio_fractions},
      {9, "integrals against quadrature", false, integrals},
      {10, "degenerate fraction", false, degenerate},
      {11, "Brouncker fraction", true, brouncker},
      {12, "log and arctan fractions against references", false, oracle_agreement},
      {13, "serial and parallel kernels agree", false, batch_determinism},
      {14, "sign pattern of c < 0 coefficients", false, trig_signs},
  };
  return list;
}

CheckResult run_one(const Check& chk, const VerifyOptions& options) {
  Ctx ctx(options, options.seed + static_cast<std::uint64_t>(chk.id));
  const auto start = std::chrono::steady_clock::now();
  try {
    chk.run(ctx);
  } catch (const std::exception& e) {
    ctx.require(false, std::string("exception: ") + e.what());
  }
  CheckResult r;
  r.id = chk.id;
  r.name = chk.name;
  r.passed = ctx.pass;
  r.empirical = chk.empirical;
  r.detail = ctx.detail;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  for (const Check& chk : checks()) out.push_back(run_one(chk, options));
  return out;
}

CheckResult run_check(int id, const VerifyOptions& options) {
  for (const Check& chk : checks())
    if (chk.id == id) return run_one(chk, options);
  throw DomainError("no check with id " + std::to_string(id));
}

std::vector<int> check_ids() {
  std::vector<int> ids;
  for (const Check& chk : checks()) ids.push_back(chk.id);
  return ids;
}

}  // namespace ecf
