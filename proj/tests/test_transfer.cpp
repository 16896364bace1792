#include <gtest/gtest.h>

#include <functional>

#include "hyperreal/error.hpp"
#include "hyperreal/transfer.hpp"

namespace {

using namespace hyperreal;
using namespace hyperreal::transfer;

const Structure& kN = Structure::naturals();
const Structure& kR = Structure::reals();
const Structure& kC = Structure::complexes();

ErrorKind error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

std::string star(std::string_view text, const Structure& s = kR) {
  return star_transform(Formula::parse(text, s)).to_string();
}

const std::vector<std::string> kStatements = {
    "1 in N",
    "forall x in N, x + 1 in N",
    "forall n in N, exists r in R : n < r",
    "forall c in C, c + 1 in R",
    "forall x in R, forall y in R, x < y -> exists z in Q, x < z and z < y",
    "exists x in R, x^2 = 2",
    "forall x in R, x >= 0 <-> |x| = x",
    "not (exists n in N, n < 0)",
    "forall n in N, even(n) or even(n + 1)",
    "forall x in R, f(x) = s(x) + 1",
    "(forall x in Z) x - x = 0",
};

}  // namespace

TEST(Classify, Goldens) {
  EXPECT_EQ(classify("forall K subset N, empty in K", kN).kind, VerdictKind::NotInLanguage);
  const auto free = classify("x in N", kN);
  EXPECT_EQ(free.kind, VerdictKind::FormulaNotStatement);
  EXPECT_EQ(free.free_vars, std::vector<std::string>{"x"});
  EXPECT_EQ(classify("1 in N", kN).kind, VerdictKind::Statement);
  EXPECT_EQ(classify("forall x in N, x + 1 in N", kN).kind, VerdictKind::Statement);
  EXPECT_EQ(classify("forall n in N, exists r in R : n < r", kR).kind, VerdictKind::Statement);
  EXPECT_EQ(classify("forall n in N, exists r in R : n < r", kN).kind, VerdictKind::NotInLanguage);
  EXPECT_EQ(classify("forall c in C, c + 1 in R", kR).kind, VerdictKind::Statement);
  EXPECT_EQ(classify("forall c in C, c + 1 in R", kC).kind, VerdictKind::Statement);
}

TEST(Classify, FreeVariables) {
  const auto v = classify("forall x in R, x < y and z > x", kR);
  EXPECT_EQ(v.kind, VerdictKind::FormulaNotStatement);
  EXPECT_EQ(v.free_vars, (std::vector<std::string>{"y", "z"}));
  // Scope ends at the quantifier body.
  EXPECT_EQ(classify("(forall x in R) x = x and x = 1", kR).free_vars,
            std::vector<std::string>{"x"});
}

TEST(Parse, Errors) {
  EXPECT_EQ(error_kind([] { Formula::parse("forall x in R", kR); }), ErrorKind::SyntaxError);
  EXPECT_EQ(error_kind([] { Formula::parse("x <", kR); }), ErrorKind::SyntaxError);
  EXPECT_EQ(error_kind([] { Formula::parse("forall x in Banach, x = x", kR); }),
            ErrorKind::NotInLanguage);
  EXPECT_EQ(error_kind([] { Formula::parse("1.5 in N", kN); }), ErrorKind::NotInLanguage);
  EXPECT_EQ(error_kind([] { Formula::parse("forall x in R, g(x) = 0", kR); }),
            ErrorKind::NotInLanguage);
  EXPECT_EQ(error_kind([] { Structure::by_name("Q"); }), ErrorKind::InvalidArgument);
}

TEST(Print, RoundTrips) {
  for (const auto& text : kStatements) {
    const Formula f = Formula::parse(text, kR);
    EXPECT_EQ(Formula::parse(f.to_string(), kR).to_string(), f.to_string()) << text;
  }
}

TEST(Star, Examples) {
  EXPECT_EQ(star("forall x in N, x+1 in N", kN), "forall x in *N, x + *1 in *N");
  EXPECT_EQ(star("forall n in N, exists r in R : n < r"),
            "forall n in *N, exists r in *R, n < r");
  EXPECT_EQ(star("forall x in R, f(x) = s(x)"), "forall x in *R, *f(x) = *s(x)");
  EXPECT_EQ(star("forall n in N, even(n) or even(n + 1)"),
            "forall n in *N, *even(n) or *even(n + *1)");
}

TEST(Star, Errors) {
  EXPECT_EQ(error_kind([] { star("x in N"); }), ErrorKind::NotAStatement);
  EXPECT_EQ(error_kind([] { star("forall x in *N, x in *R"); }), ErrorKind::AlreadyStarred);
  EXPECT_EQ(error_kind([] { star("forall n in N, n < omega"); }), ErrorKind::NotInLanguage);
}

TEST(Star, PreservesShape) {
  for (const auto& text : kStatements) {
    const Formula f = Formula::parse(text, kR);
    const Formula g = star_transform(f);
    EXPECT_EQ(g.node_count(), f.node_count()) << text;
    EXPECT_EQ(g.quantifier_signature(), f.quantifier_signature()) << text;
    EXPECT_TRUE(g.has_starred_symbol()) << text;
    EXPECT_TRUE(g.free_variables().empty());
  }
}

TEST(Transferable, ForwardAndBackward) {
  for (const auto& text : kStatements) {
    const Formula f = Formula::parse(text, kR);
    const Verdict fwd = check_transferable(f, Direction::Forward);
    EXPECT_EQ(fwd.kind, VerdictKind::Transferable) << text;
    ASSERT_TRUE(fwd.transformed_text.has_value());
    EXPECT_EQ(*fwd.transformed_text, star_transform(f).to_string());

    const Formula starred = Formula::parse(*fwd.transformed_text, kR);
    const Verdict back = check_transferable(starred, Direction::Backward);
    EXPECT_EQ(back.kind, VerdictKind::Transferable) << *fwd.transformed_text;
    ASSERT_TRUE(back.transformed_text.has_value());
    EXPECT_EQ(*back.transformed_text, f.to_string());
  }
}

TEST(Transferable, ExternalSymbolsBlockBackward) {
  const Formula f = Formula::parse("forall n in *N, |*s(n)| <= omega", kR);
  EXPECT_EQ(f.external_symbols(), std::vector<std::string>{"omega"});
  const Verdict v = check_transferable(f, Direction::Backward);
  EXPECT_EQ(v.kind, VerdictKind::NotTransferable);
  EXPECT_EQ(v.external_symbols, std::vector<std::string>{"omega"});

  const Formula unstarred = Formula::parse("forall x in *R, x < s(x)", kR);
  EXPECT_EQ(check_transferable(unstarred, Direction::Backward).kind,
            VerdictKind::NotTransferable);
  const Verdict open = check_transferable(Formula::parse("x in *N", kR), Direction::Backward);
  EXPECT_EQ(open.kind, VerdictKind::NotTransferable);
  EXPECT_EQ(open.free_vars, std::vector<std::string>{"x"});
  EXPECT_EQ(check_transferable(Formula::parse("forall x in *N, x in *R", kR), Direction::Forward)
                .kind,
            VerdictKind::NotTransferable);
}

TEST(Weaken, BoundedSequence) {
  const Formula f = Formula::parse("forall n in *N, |*s(n)| <= omega", kR);
  EXPECT_EQ(check_transferable(f, Direction::Backward).kind, VerdictKind::NotTransferable);
  const Formula w = existential_weakening(f, "omega");
  EXPECT_EQ(w.to_string(), "exists r in *R, forall n in *N, |*s(n)| <= r");
  const Verdict v = check_transferable(w, Direction::Backward);
  EXPECT_EQ(v.kind, VerdictKind::Transferable);
  EXPECT_EQ(v.transformed_text, std::optional<std::string>("exists r in R, forall n in N, |s(n)| <= r"));
  EXPECT_EQ(error_kind([&] { existential_weakening(f, "pi"); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(error_kind([&] { existential_weakening(f, "omega", "n"); }),
            ErrorKind::InvalidArgument);
}
