#include <gtest/gtest.h>

#include <functional>

#include "hyperreal/error.hpp"
#include "hyperreal/filters.hpp"
#include "support.hpp"

namespace {

using namespace hyperreal;
using namespace hyperreal::filters;
using support::Rng;

ErrorKind error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

// Oracle: the definitions read literally, over vectors of membership flags.
struct NaiveReport {
  bool filter;
  bool proper;
  bool ultra;
};

NaiveReport naive_classify(int n, const std::vector<std::vector<bool>>& fam) {
  auto has = [&](const std::vector<bool>& s) {
    for (const auto& m : fam) {
      if (m == s) return true;
    }
    return false;
  };
  std::vector<std::vector<bool>> all;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<bool> s(n);
    for (int i = 0; i < n; ++i) s[i] = (mask >> i) & 1u;
    all.push_back(s);
  }
  bool filter = !fam.empty();
  for (const auto& a : fam) {
    for (const auto& b : fam) {
      std::vector<bool> c(n);
      for (int i = 0; i < n; ++i) c[i] = a[i] && b[i];
      filter = filter && has(c);
    }
    for (const auto& b : all) {
      bool superset = true;
      for (int i = 0; i < n; ++i) superset = superset && (!a[i] || b[i]);
      if (superset) filter = filter && has(b);
    }
  }
  const bool proper = !has(std::vector<bool>(n, false));
  bool ultra = filter && proper;
  for (const auto& a : all) {
    std::vector<bool> c(n);
    for (int i = 0; i < n; ++i) c[i] = !a[i];
    ultra = ultra && (has(a) || has(c));
  }
  return {filter, proper, ultra};
}

SetFamily random_family(Rng& rng, GroundSet g) {
  SetFamily f(g);
  const long k = support::uniform(rng, 0, 6);
  for (long i = 0; i < k; ++i) f.insert(static_cast<Subset>(support::uniform(rng, 0, g.full())));
  return f;
}

std::vector<std::vector<bool>> as_bools(const SetFamily& f) {
  std::vector<std::vector<bool>> out;
  for (Subset s : f.members()) {
    std::vector<bool> v(f.ground().size());
    for (int i = 0; i < f.ground().size(); ++i) v[i] = (s >> i) & 1u;
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(GroundSet, Bounds) {
  EXPECT_EQ(error_kind([] { GroundSet(0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(error_kind([] { GroundSet(9); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(GroundSet(3).full(), 0b111);
  EXPECT_EQ(make_subset({0, 2}), 0b101);
  EXPECT_EQ(elements_of(0b101), (std::vector<int>{0, 2}));
  EXPECT_EQ(error_kind([] { SetFamily(GroundSet(2), {0b100}); }), ErrorKind::InvalidArgument);
}

TEST(Classify, Examples) {
  const GroundSet g(3);
  const auto pow = classify_family(SetFamily::powerset(g));
  EXPECT_TRUE(pow.is_filter);
  EXPECT_FALSE(pow.is_proper);
  EXPECT_FALSE(pow.is_ultrafilter);

  const auto whole = classify_family(SetFamily::whole(g));
  EXPECT_TRUE(whole.is_filter);
  EXPECT_TRUE(whole.is_proper);
  EXPECT_FALSE(whole.is_ultrafilter);

  const auto p1 = classify_family(SetFamily::principal(g, 1));
  EXPECT_TRUE(p1.is_ultrafilter);
  EXPECT_EQ(p1.principal_generator, std::optional<int>(1));

  EXPECT_FALSE(classify_family(SetFamily(g)).is_filter);
  EXPECT_FALSE(classify_family(SetFamily(g, {0b011})).is_filter);
  EXPECT_EQ(SetFamily::cofinite(g), SetFamily::powerset(g));

  // On a one-point set {I} and the principal ultrafilter coincide.
  EXPECT_TRUE(classify_family(SetFamily::whole(GroundSet(1))).is_ultrafilter);
}

TEST(Classify, MatchesNaiveOracle) {
  Rng rng(31);
  for (int n = 1; n <= 4; ++n) {
    for (int i = 0; i < 300; ++i) {
      SetFamily f = random_family(rng, GroundSet(n));
      if (i % 2 == 0) f = generate_filter(f);
      const auto got = classify_family(f);
      const auto want = naive_classify(n, as_bools(f));
      EXPECT_EQ(got.is_filter, want.filter);
      EXPECT_EQ(got.is_proper, want.proper);
      EXPECT_EQ(got.is_ultrafilter, want.ultra);
    }
  }
}

TEST(Generate, Examples) {
  const GroundSet g(3);
  EXPECT_EQ(generate_filter(SetFamily(g, {make_subset({1})})), SetFamily::principal(g, 1));
  EXPECT_EQ(generate_filter(SetFamily(g)), SetFamily::whole(g));
  EXPECT_EQ(generate_filter(SetFamily(g, {make_subset({0}), make_subset({1})})),
            SetFamily::powerset(g));
  const SetFamily two = generate_filter(SetFamily(g, {make_subset({0, 1})}));
  EXPECT_EQ(two.size(), 2u);
  EXPECT_FALSE(classify_family(two).is_ultrafilter);
}

TEST(Generate, IsSmallestFilterAbove) {
  Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    const GroundSet g(static_cast<int>(support::uniform(rng, 1, 4)));
    const SetFamily seed = random_family(rng, g);
    const SetFamily f = generate_filter(seed);
    EXPECT_TRUE(classify_family(f).is_filter);
    for (Subset s : seed.members()) EXPECT_TRUE(f.contains(s));
    EXPECT_EQ(generate_filter(f), f);
  }
}

TEST(Enumerate, FiniteSetsHaveOnlyPrincipalUltrafilters) {
  for (int n = 1; n <= 4; ++n) {
    const GroundSet g(n);
    const auto found = enumerate_ultrafilters(g);
    ASSERT_EQ(found.size(), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(found[i], SetFamily::principal(g, i));
      EXPECT_EQ(classify_family(found[i]).principal_generator, std::optional<int>(i));
    }
  }
}

TEST(Enumerate, ModesAgree) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(enumerate_ultrafilters(GroundSet(n), EnumerationMode::Exhaustive),
              enumerate_ultrafilters(GroundSet(n), EnumerationMode::Generator));
  }
  EXPECT_EQ(enumerate_ultrafilters(GroundSet(8), EnumerationMode::Generator).size(), 8u);
  EXPECT_EQ(error_kind([] { enumerate_ultrafilters(GroundSet(6), EnumerationMode::Exhaustive); }),
            ErrorKind::InvalidArgument);
}

TEST(Ultrafilter, PigeonholeAndDichotomy) {
  // If A u B is in an ultrafilter then A or B is.
  for (int n = 1; n <= 4; ++n) {
    const GroundSet g(n);
    for (const auto& u : enumerate_ultrafilters(g)) {
      for (unsigned a = 0; a <= g.full(); ++a) {
        const auto sa = static_cast<Subset>(a);
        EXPECT_NE(u.contains(sa), u.contains(g.complement(sa)));
        for (unsigned b = 0; b <= g.full(); ++b) {
          const auto sb = static_cast<Subset>(b);
          if (u.contains(static_cast<Subset>(sa | sb))) {
            EXPECT_TRUE(u.contains(sa) || u.contains(sb));
          }
        }
      }
    }
  }
}
