#include <gtest/gtest.h>

#include <functional>

#include "hyperreal/error.hpp"
#include "hyperreal/ultrapower.hpp"
#include "support.hpp"

namespace {

using namespace hyperreal;
using namespace hyperreal::ultrapower;
using support::Rng;

const HyperReal kOmega = HyperReal::omega();

ErrorKind error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

Polynomial random_poly(Rng& rng, long max_degree) {
  std::vector<Rational> c;
  const long d = support::uniform(rng, 0, max_degree);
  for (long k = 0; k <= d; ++k) c.push_back(support::random_rational(rng, 5, 3));
  return Polynomial(std::move(c));
}

RatSeq random_seq(Rng& rng) {
  for (;;) {
    Polynomial den = random_poly(rng, 2);
    if (den.is_zero()) continue;
    return RatSeq(random_poly(rng, 3), den);
  }
}

// Numerical oracle: the order of r_n and s_n at one large index.
int sign_far_out(const RatSeq& r, const RatSeq& s) {
  const Rational n(mpz_class("1" + std::string(30, '0')));
  return sgn(r.at(n) - s.at(n));
}

}  // namespace

TEST(Polynomial, Arithmetic) {
  const Polynomial n = Polynomial::index();
  const Polynomial one = Polynomial::constant(1);
  EXPECT_EQ((n + one) * (n - one), n * n - one);
  const auto [q, r] = Polynomial::divmod(n * n - one, n - one);
  EXPECT_EQ(q, n + one);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(Polynomial::gcd((n - one) * (n + one), (n - one) * n), n - one);
  EXPECT_EQ(Polynomial().degree(), -1);
}

TEST(Polynomial, RootBoundExceedsRoots) {
  const Polynomial n = Polynomial::index();
  const Polynomial p = (n - Polynomial::constant(7)) * (n + Polynomial::constant(3));
  EXPECT_GT(p.root_bound(), 7);
}

TEST(RatSeq, Examples) {
  const RatSeq sum = seq_add(RatSeq::index(), RatSeq::reciprocal());
  EXPECT_EQ(sum, RatSeq::parse("(n^2 + 1)/n"));
  EXPECT_EQ(seq_mul(RatSeq::reciprocal(), RatSeq::index()), RatSeq::constant(1));
  EXPECT_EQ(seq_inv(RatSeq::index()), RatSeq::reciprocal());
  EXPECT_EQ(RatSeq::parse("n/n^2"), RatSeq::reciprocal());
  EXPECT_EQ(RatSeq::parse("(2*n^2+1)/(n^2+3)").at(1),
            make_rational(3, 4));
}

TEST(RatSeq, Errors) {
  EXPECT_EQ(error_kind([] { seq_inv(RatSeq::constant(0)); }), ErrorKind::ExactZero);
  EXPECT_EQ(error_kind([] { RatSeq::parse("abs(n)"); }), ErrorKind::NotRationalFunction);
  EXPECT_EQ(error_kind([] { RatSeq::parse("n + eps"); }), ErrorKind::NotRationalFunction);
  EXPECT_EQ(error_kind([] { RatSeq::parse("1/(n - 3)").at(3); }), ErrorKind::DivisionByExactZero);
  EXPECT_GT(RatSeq::parse("1/(n - 3)").defined_from(), 3u);
}

TEST(Compare, Examples) {
  EXPECT_EQ(seq_compare(RatSeq::parse("(n^2 - 5*n)/(n + 1)"), RatSeq::index()), Ordering::Less);
  EXPECT_EQ(seq_compare(RatSeq::reciprocal(), RatSeq::constant(0)), Ordering::Greater);
  EXPECT_EQ(seq_compare(RatSeq::parse("(n+1)/n"), RatSeq::parse("1 + 1/n")), Ordering::Equal);
  // 100 - n starts positive but is eventually below zero.
  const auto a = agreement(RatSeq::parse("100 - n"), Relation::Greater, RatSeq::constant(0));
  EXPECT_EQ(a.verdict, AgreementSet::Verdict::Finite);
  EXPECT_GE(a.witness, 100u);
  const auto b = agreement(RatSeq::parse("n^2"), Relation::GreaterEqual, RatSeq::parse("10*n"));
  EXPECT_EQ(b.verdict, AgreementSet::Verdict::Cofinite);
  for (unsigned long n = b.witness; n < b.witness + 50; ++n) EXPECT_GE(n * n, 10 * n);
}

TEST(Compare, AgreesWithNumericOracle) {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const RatSeq r = random_seq(rng);
    const RatSeq s = random_seq(rng);
    const int expected = sign_far_out(r, s);
    const Ordering got = seq_compare(r, s);
    EXPECT_EQ(got, expected < 0 ? Ordering::Less : expected > 0 ? Ordering::Greater : Ordering::Equal)
        << r.to_string() << " vs " << s.to_string();
  }
}

TEST(Agreement, WitnessIsHonest) {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const RatSeq r = random_seq(rng);
    const RatSeq s = random_seq(rng);
    const auto a = agreement(r, Relation::Less, s);
    const unsigned long start = std::max({a.witness, r.defined_from(), s.defined_from()});
    for (unsigned long n = start; n < start + 30; ++n) {
      const bool holds = r.at(n) < s.at(n);
      EXPECT_EQ(holds, a.verdict == AgreementSet::Verdict::Cofinite)
          << r.to_string() << " < " << s.to_string() << " at " << n;
    }
  }
}

TEST(Embed, Examples) {
  EXPECT_EQ(embed(RatSeq::index()), kOmega);
  EXPECT_EQ(embed(RatSeq::reciprocal()), HyperReal::eps());
  EXPECT_EQ(shadow(embed(RatSeq::parse("(2*n^2+1)/(n^2+3)"))), 2);
  EXPECT_EQ(classify(embed(RatSeq::parse("n^2 - n"))), Classification::PositiveUnlimited);
}

TEST(Embed, IsOrderPreservingRingHomomorphism) {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const RatSeq r = random_seq(rng);
    const RatSeq s = random_seq(rng);
    const HyperReal er = embed(r);
    const HyperReal es = embed(s);
    EXPECT_EQ(seq_compare(r, s), compare(er, es));
    for (const auto& [seq, expected] :
         {std::pair{seq_add(r, s), er + es}, std::pair{seq_mul(r, s), er * es}}) {
      const HyperReal got = embed(seq);
      const HyperReal diff = got - expected;
      if (diff.is_exact()) {
        EXPECT_TRUE(diff.is_exact_zero()) << r.to_string() << ", " << s.to_string();
        continue;
      }
      EXPECT_GE(support::effective_lead(diff), *diff.order_bound())
          << r.to_string() << ", " << s.to_string();
    }
  }
}
