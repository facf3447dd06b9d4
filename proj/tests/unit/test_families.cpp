#include <doctest.h>

#include "ecf/cf_core.hpp"
#include "ecf/errors.hpp"
#include "ecf/families.hpp"
#include "ecf/reference.hpp"
#include "nested_fraction.hpp"
#include "test_support.hpp"

using namespace ecf;
using testing::nested_fraction;

namespace {

Rational R(long n, long d = 1) { return {Integer(n), Integer(d)}; }

HPFloat H(const Rational& r, long bits = 128) { return HPFloat(r, bits); }

double abs_diff(const HPFloat& a, const HPFloat& b) { return (a - b).abs().to_double(); }

// Random pair 0 < m < n of small rationals.
std::pair<Rational, Rational> random_mn() {
  const Rational n = R(testing::uniform_int(2, 60), testing::uniform_int(1, 7));
  Rational m = n * R(testing::uniform_int(1, 97), 100);
  return {m, n};
}

// Convergent values straight from the nested definition.
Rational nested_log(const Rational& n, const Rational& m, int depth) {
  return nested_fraction(0, testing::log_levels(n, m, depth));
}
Rational nested_atan(const Rational& n, const Rational& m, int depth) {
  return nested_fraction(0, testing::atan_levels(n, m, depth));
}

}  // namespace

TEST_SUITE("log family") {
  TEST_CASE("ln 2 with n = 3, m = 1: 2/3, 18/26, 262/378") {
    const auto c = convergents(log_of_integer(2), 3);
    CHECK(c[1].p == 2);
    CHECK(c[1].q == 3);
    CHECK(c[2].p == 18);
    CHECK(c[2].q == 26);
    CHECK(c[3].p == 262);
    CHECK(c[3].q == 378);
    CHECK(c[2].value() == R(9, 13));
    CHECK(c[3].value() == nested_log(3, 1, 3));
  }

  TEST_CASE("reciprocal form n = 2, m = 1 is 2 - 1/(6 - 4/(10 - 9/(14 - ...)))") {
    const CFTermSeq cf = log_reciprocal_cf_spec(2, 1);
    CHECK(cf.beta0() == 2);
    const long alphas[] = {-1, -4, -9, -16};
    const long betas[] = {6, 10, 14, 18};
    for (std::size_t k = 1; k <= 4; ++k) {
      CHECK(cf.term(k).alpha == alphas[k - 1]);
      CHECK(cf.term(k).beta == betas[k - 1]);
    }
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(log_cf_spec(2, 4), DomainError);
    CHECK_THROWS_AS(log_cf_spec(2, 5), DomainError);
    CHECK_THROWS_AS(log_cf_spec(0, 1), DomainError);
    CHECK_THROWS_AS(log_cf_spec(2, 0), DomainError);
    CHECK_THROWS_AS(log_of_integer(1), DomainError);
    CHECK_THROWS_AS(log_of_fraction(2, 3), DomainError);
    CHECK_THROWS_AS(log_of_fraction(3, 3), DomainError);
    CHECK_THROWS_AS(log_of_fraction(3, 0), DomainError);
  }

  TEST_CASE("log_of_integer delegates to n = i + 1, m = i - 1") {
    for (long i = 2; i < 12; ++i) {
      const CFTermSeq cf = log_of_integer(i);
      const FamilyTag& t = cf.family();
      CHECK(t.kind == FamilyKind::LogNM);
      CHECK(t.n == i + 1);
      CHECK(t.msq == (i - 1) * (i - 1));
    }
  }

  TEST_CASE("ln 3 at depth 3 and depth growth") {
    const CFTermSeq cf = log_of_integer(3);
    CHECK(std::abs(eval_value(cf, 3, 128).to_double() - 1.0980) < 5e-5);
    const HPFloat ln3 = ln_ref(R(3), 128);
    double prev = 1.0;
    for (std::size_t d : {3u, 6u, 12u, 24u}) {
      const double err = abs_diff(eval_value(cf, d, 128), ln3);
      CHECK(err < prev);
      prev = err;
    }
  }

  TEST_CASE("ln 10 within 1e-12 at depth 60") {
    CHECK(abs_diff(eval_value(log_of_integer(10), 60, 128), ln_ref(R(10), 128)) < 1e-12);
  }

  TEST_CASE("ln(3/2): 2/5 at depth 1, 742/1830 at depth 3") {
    const CFTermSeq cf = log_of_fraction(3, 2);
    const auto c = convergents(cf, 3);
    CHECK(c[1].value() == R(2, 5));
    CHECK(c[3].p == 742);
    CHECK(c[3].q == 1830);
    CHECK(c[3].value() == nested_log(5, 1, 3));
    CHECK(convergents(log_of_fraction(2, 1), 2)[2].value() == R(9, 13));
  }

  TEST_CASE("irrational m: stripped convergents times m give the value") {
    const CFTermSeq cf = log_cf_spec(3, 2);  // m = sqrt 2
    CHECK(cf.has_irrational_front());
    const HPFloat s2 = sqrt_hp(H(2));
    const HPFloat want = ln_ref((H(3) + s2) / (H(3) - s2));
    CHECK(testing::rel(eval_value(cf, 80, 128), want) < 1e-30);
  }
}

TEST_SUITE("arctan family") {
  TEST_CASE("m = n = 1: 1, 3/4, 19/24") {
    const auto c = convergents(atan_cf_spec(1, 1), 3);
    CHECK(c[1].value() == 1);
    CHECK(c[2].value() == R(3, 4));
    CHECK(c[3].value() == R(19, 24));
  }

  TEST_CASE("m^2 = 3, n = 3: stripped convergents 1/3, 3/10, 49/162") {
    const CFTermSeq cf = atan_cf_spec(3, 3);
    CHECK(cf.has_irrational_front());
    const auto c = convergents(cf, 3);
    CHECK(c[1].value() == R(1, 3));
    CHECK(c[2].value() == R(3, 10));
    CHECK(c[3].value() == R(49, 162));
    // Oracle: the stripped fraction tends to arctan(1/sqrt 3)/sqrt 3 = pi/(6 sqrt 3).
    const HPFloat want = pi_ref(128) / (H(6) * sqrt_hp(H(3)));
    CHECK(testing::rel(eval_backward(cf, 60, 128), want) < 1e-30);
    CHECK(testing::rel(eval_value(cf, 60, 128) * H(6), pi_ref(128)) < 1e-30);
  }

  TEST_CASE("depth 1 is m/n, shrinking as n grows") {
    double prev = 2.0;
    for (long n = 1; n < 200; n *= 3) {
      const HPFloat v = eval_value(atan_cf_spec(n, 1), 1, 128);
      CHECK(v == H(R(1, n)));
      CHECK(v.to_double() < prev);
      prev = v.to_double();
    }
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(atan_cf_spec(0, 1), DomainError);
    CHECK_THROWS_AS(atan_cf_spec(1, 0), DomainError);
  }
}

TEST_SUITE("closed-form tables") {
  TEST_CASE("log convergents 2..5 as polynomial fractions") {
    for (int trial = 0; trial < 20; ++trial) {
      const auto [m, n] = random_mn();
      const auto c = convergents(log_cf_spec(n, m * m), 5);
      const Rational m2 = m * m, n2 = n * n;
      CHECK(c[2].value() == R(6) * m * n / (R(3) * n2 - m2));
      CHECK(c[3].value() == (R(30) * m * n2 - R(8) * m * m2) / (R(15) * n * n2 - R(9) * m2 * n));
      CHECK(c[4].value() == (R(210) * m * n * n2 - R(110) * m * m2 * n) /
                                (R(105) * n2 * n2 - R(90) * m2 * n2 + R(9) * m2 * m2));
      CHECK(c[5].value() == (R(1890) * m * n2 * n2 - R(1470) * m * m2 * n2 + R(128) * m * m2 * m2) /
                                (R(945) * n * n2 * n2 - R(1050) * m2 * n * n2 + R(225) * m2 * m2 * n));
    }
  }

  TEST_CASE("the misprinted log coefficients do not fit") {
    // 6nn, 111 and 1980 as printed; each is off for generic (m, n).
    const Rational m = R(1), n = R(2);
    const auto c = convergents(log_cf_spec(n, m * m), 5);
    CHECK(c[2].value() != R(6) * n * n / (R(3) * n * n - m * m));
    CHECK(c[4].value() != (R(210) * m * n * n * n - R(111) * m * m * m * n) /
                              (R(105) * n * n * n * n - R(90) * m * m * n * n + R(9) * m * m * m * m));
    CHECK(c[4].value() == R(1460, 1329));
    CHECK(c[5].value() != (R(1980) * n * n * n * n - R(1470) * n * n + R(128)) /
                              (R(945) * n * n * n * n * n - R(1050) * n * n * n + R(225) * n));
  }

  TEST_CASE("arctan convergents 2..4 as polynomial fractions") {
    for (int trial = 0; trial < 20; ++trial) {
      const auto [m, n] = random_mn();
      const auto c = convergents(atan_cf_spec(n, m * m), 4);
      const Rational m2 = m * m, n2 = n * n;
      CHECK(c[2].value() == R(3) * m * n / (R(3) * n2 + m2));
      CHECK(c[3].value() == (R(15) * m * n2 + R(4) * m * m2) / (R(15) * n * n2 + R(9) * m2 * n));
      CHECK(c[4].value() == (R(105) * m * n * n2 + R(55) * m * m2 * n) /
                                (R(105) * n2 * n2 + R(90) * m2 * n2 + R(9) * m2 * m2));
      CHECK(c[2].value() != R(3) * m * m / (R(3) * n2 + m2));
    }
  }
}

TEST_SUITE("difference law") {
  TEST_CASE("hand values for m = 1, n = 2") {
    CHECK(difference_closed_form(1, 2, 1, FamilyKind::LogNM) == 1);  // 2m/n
    CHECK(difference_closed_form(2, 2, 1, FamilyKind::LogNM) == R(1, 11));
    CHECK(difference_closed_form(3, 2, 1, FamilyKind::LogNM) == R(4, 561));
    CHECK(R(56, 51) - R(12, 11) == R(4, 561));
  }

  TEST_CASE("closed form equals the exact convergent differences, k <= 20") {
    for (int trial = 0; trial < 20; ++trial) {
      const auto [m, n] = random_mn();
      const Rational msq = m * m;
      for (FamilyKind kind : {FamilyKind::LogNM, FamilyKind::AtanNM}) {
        const CFTermSeq cf = kind == FamilyKind::LogNM ? log_cf_spec(n, msq) : atan_cf_spec(n, msq);
        const auto c = convergents(cf, 20);
        for (std::size_t k = 1; k <= 20; ++k) {
          const Rational diff = c[k].value() - c[k - 1].value();
          CHECK(difference_closed_form(k, n, msq, kind) == diff);
          if (kind == FamilyKind::LogNM) CHECK(diff.sign() > 0);
          else CHECK(diff.sign() == (k % 2 == 1 ? 1 : -1));
        }
        CHECK(determinant_identity_check(convergents(cf, 200), cf));
      }
    }
  }

  TEST_CASE("row V - IV carries m^7 and 90 m^2 n^2") {
    for (int trial = 0; trial < 5; ++trial) {
      const auto [m, n] = random_mn();
      const Rational m2 = m * m, n2 = n * n;
      const Rational want = R(2 * 4 * 9) * m2 * m2 * m2 * m /
                            ((R(15) * n * n2 - R(9) * m2 * n) *
                             (R(105) * n2 * n2 - R(90) * m2 * n2 + R(9) * m2 * m2));
      CHECK(difference_closed_form(4, n, m2, FamilyKind::LogNM) == want);
    }
  }

  TEST_CASE("stripped m: the law holds for the rational part") {
    const CFTermSeq cf = atan_cf_spec(5, 3);
    const auto c = convergents(cf, 12);
    for (std::size_t k = 1; k <= 12; ++k)
      CHECK(difference_closed_form(k, 5, 3, FamilyKind::AtanNM) == c[k].value() - c[k - 1].value());
  }

  TEST_CASE("rejections") {
    CHECK_THROWS_AS(difference_closed_form(0, 2, 1, FamilyKind::LogNM), DomainError);
    CHECK_THROWS_AS(difference_closed_form(3, 2, 4, FamilyKind::LogNM), DomainError);
    CHECK_THROWS_AS(difference_closed_form(3, 2, 1, FamilyKind::Brouncker), DomainError);
  }
}

TEST_SUITE("auto_terms") {
  TEST_CASE("ln(3/2) at 1e-6 picks depth 3") {
    const CFTermSeq cf = log_of_fraction(3, 2);
    const std::size_t k = auto_terms(cf, HPFloat::parse("1e-6", 128));
    // Oracle: the nested values at consecutive depths.
    const Rational step_k = nested_log(5, 1, static_cast<int>(k) + 1) - nested_log(5, 1, static_cast<int>(k));
    const Rational step_prev = nested_log(5, 1, static_cast<int>(k)) - nested_log(5, 1, static_cast<int>(k) - 1);
    CHECK(step_k.abs() < Rational(Integer(1), Integer(1000000)));
    CHECK(step_prev.abs() >= Rational(Integer(1), Integer(1000000)));
    CHECK(k == 3);
  }

  TEST_CASE("a loose tolerance needs one term") {
    CHECK(auto_terms(log_of_integer(2), HPFloat(1, 128)) == 1);
    CHECK(auto_terms(atan_cf_spec(1, 1), HPFloat(1, 128)) == 1);
  }

  TEST_CASE("post-condition holds for arctan(1/3) at 1e-10 and random families") {
    const HPFloat tol = HPFloat::parse("1e-10", 128);
    const CFTermSeq cf = atan_cf_spec(3, 1);
    const std::size_t k = auto_terms(cf, tol);
    CHECK(next_difference_magnitude(cf, k, 128) < tol);
    CHECK(next_difference_magnitude(cf, k - 1, 128) >= tol);
    CHECK((eval_value(cf, k + 1, 128) - eval_value(cf, k, 128)).abs() < tol);
    for (int trial = 0; trial < 10; ++trial) {
      const auto [m, n] = random_mn();
      const CFTermSeq lg = log_cf_spec(n, m * m);
      const std::size_t j = auto_terms(lg, tol);
      CHECK((eval_value(lg, j + 1, 160) - eval_value(lg, j, 160)).abs() < tol);
      if (j > 1) CHECK(next_difference_magnitude(lg, j - 1, 160) >= tol);
    }
  }

  TEST_CASE("rejections") {
    CHECK_THROWS_AS(auto_terms(brouncker_cf_spec(), HPFloat(1, 128)), DomainError);
    CHECK_THROWS_AS(auto_terms(log_of_integer(2), HPFloat(0, 128)), DomainError);
  }
}

TEST_SUITE("oracle agreement") {
  TEST_CASE("ln(p/q) for 50 random fractions, tol 1e-20, 160 bits") {
    const HPFloat tol = HPFloat::parse("1e-20", 160);
    for (int trial = 0; trial < 50; ++trial) {
      const long p = testing::uniform_int(2, 200);
      const long q = testing::uniform_int(1, p - 1);
      const CFTermSeq cf = log_of_fraction(p, q);
      const HPFloat v = eval_value(cf, auto_terms(cf, tol), 160);
      INFO("p/q = " << p << "/" << q);
      CHECK(testing::rel(v, ln_ref(R(p, q), 160)) < 1e-18);
    }
  }

  TEST_CASE("arctan(m/n) for 50 random pairs, tol 1e-20, 160 bits") {
    const HPFloat tol = HPFloat::parse("1e-20", 160);
    for (int trial = 0; trial < 50; ++trial) {
      const long n = testing::uniform_int(2, 50);
      const long m = testing::uniform_int(1, n - 1);
      const CFTermSeq cf = atan_cf_spec(n, m * m);
      const HPFloat v = eval_value(cf, auto_terms(cf, tol), 160);
      INFO("m/n = " << m << "/" << n);
      CHECK(testing::rel(v, atan_ref(R(m, n), 160)) < 1e-18);
    }
  }
}

TEST_SUITE("pi") {
  TEST_CASE("arctan 1/2 + arctan 1/3 = pi/4 at depth 40") {
    const HPFloat sum = eval_value(atan_cf_spec(2, 1), 40, 128) + eval_value(atan_cf_spec(3, 1), 40, 128);
    CHECK(abs_diff(sum, pi_ref(128) / H(4)) < 1e-12);
  }

  TEST_CASE("every method with a tolerance lands within it") {
    const HPFloat pi = pi_ref(128);
    for (PiMethod method : {PiMethod::Atan11, PiMethod::Sqrt3, PiMethod::MachinSplit}) {
      const PiEstimate e = pi_by_fraction(method, std::nullopt, HPFloat::parse("1e-25", 128), 128);
      INFO(to_string(method));
      CHECK(abs_diff(e.value, pi) < 1e-25);
      CHECK(e.error_est.to_double() < 1e-25);
    }
    const PiEstimate b = pi_by_fraction(PiMethod::Brouncker, std::nullopt, HPFloat::parse("1e-3", 128), 128);
    CHECK(abs_diff(b.value, pi) < 1e-3);
  }

  TEST_CASE("fixed depth error estimate bounds the true error") {
    const HPFloat pi = pi_ref(128);
    for (PiMethod method : {PiMethod::Atan11, PiMethod::Sqrt3, PiMethod::MachinSplit, PiMethod::Brouncker}) {
      const PiEstimate e = pi_by_fraction(method, 6, std::nullopt, 128);
      INFO(to_string(method));
      CHECK(abs_diff(e.value, pi) <= e.error_est.to_double());
    }
  }

  TEST_CASE("method names round-trip") {
    for (PiMethod method : {PiMethod::Atan11, PiMethod::Sqrt3, PiMethod::MachinSplit, PiMethod::Brouncker})
      CHECK(parse_pi_method(to_string(method)) == method);
    CHECK_FALSE(parse_pi_method("leibniz").has_value());
    CHECK_THROWS_AS(pi_by_fraction(PiMethod::Atan11, std::nullopt, std::nullopt, 128), DomainError);
  }
}

TEST_SUITE("Brouncker") {
  TEST_CASE("depth 1 is 1/2, every convergent positive, parities bracket") {
    const CFTermSeq cf = brouncker_cf_spec();
    const auto c = convergents(cf, 60);
    CHECK(c[1].value() == R(1, 2));
    const HPFloat limit = H(4) / pi_ref(128) - H(1);
    for (std::size_t k = 1; k <= 60; ++k) {
      CHECK(c[k].value().sign() > 0);
      const HPFloat v = H(c[k].value());
      // Odd truncations lie above the limit, even ones below.
      if (k % 2 == 1) CHECK(v > limit);
      else CHECK(v < limit);
    }
  }

  TEST_CASE("empirical limit 4/pi - 1") {
    const HPFloat limit = H(4) / pi_ref(128) - H(1);
    const CFTermSeq cf = brouncker_cf_spec();
    const HPFloat mid = (eval_backward(cf, 400, 128) + eval_backward(cf, 401, 128)) / H(2);
    CHECK(abs_diff(mid, limit) < 1e-6);
    CHECK(abs_diff(eval_backward(cf, 1'000'000, 128), limit) < 1e-6);
  }
}

TEST_SUITE("degenerate fraction") {
  TEST_CASE("depths 1 and 2 are 2/3 and 6/11") {
    const auto c = convergents(degenerate_cf_spec(), 2);
    CHECK(c[1].value() == R(2, 3));
    CHECK(c[2].value() == R(6, 11));
    CHECK(c[2].value() == nested_fraction(1, {{R(-1), R(3)}, {R(-4), R(5)}}));
  }

  TEST_CASE("truncations positive and strictly decreasing through depth 1000") {
    const auto c = convergents(degenerate_cf_spec(), 1000);
    Rational prev = c[0].value();
    bool ok = true;
    for (std::size_t k = 1; k <= 1000; ++k) {
      const Rational v = c[k].value();
      ok = ok && v.sign() > 0 && v < prev;
      prev = v;
    }
    CHECK(ok);
  }

  TEST_CASE("tails: hand values") {
    CHECK(degenerate_tail(1, 1, 128) == H(R(11, 5)));
    CHECK(degenerate_tail(2, 1, 128) == H(R(26, 7)));
    CHECK(degenerate_tail(4, 0, 128) == H(9));
    CHECK_THROWS_AS(degenerate_tail(0, 3, 128), DomainError);
  }

  TEST_CASE("tails strictly decrease in depth and stay above k") {
    for (std::size_t k = 1; k <= 10; ++k) {
      HPFloat prev = degenerate_tail(k, 0, 128);
      bool ok = true;
      for (std::size_t d = 1; d <= 1000; ++d) {
        const HPFloat t = degenerate_tail(k, d, 128);
        ok = ok && t < prev && t > HPFloat(static_cast<long>(k), 128);
        prev = t;
      }
      INFO("k = " << k);
      CHECK(ok);
    }
  }
}
