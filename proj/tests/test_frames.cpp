#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flagsym/flagsym.hpp"
#include "test_util.hpp"

using namespace flagsym;
using flagsym::testing::Rng;

TEST_CASE("build_frame base cases") {
  // Z[1] = d_t + x1 d_x0 + y1 d_y0
  Frame f1(ClassCode::parse("1", Mode::flag2));
  VecField z1(f1.chart());
  z1.set(Coord::t(), Expr::constant(Mode::flag2, Scalar(1)));
  z1.set(Coord::x(0), Expr::coordinate(Coord::x(1)));
  z1.set(Coord::y(0), Expr::coordinate(Coord::y(1)));
  CHECK(f1.ladder(1) == z1);

  // Z[2] = x2 Z[1] + d_x1 + y2 d_y1 for code 1.2
  Frame f12(ClassCode::parse("1.2", Mode::flag2));
  VecField z2(f12.chart());
  Expr x2 = Expr::coordinate(Coord::x(2));
  z2.set(Coord::t(), x2);
  z2.set(Coord::x(0), x2 * Expr::coordinate(Coord::x(1)));
  z2.set(Coord::y(0), x2 * Expr::coordinate(Coord::y(1)));
  z2.set(Coord::x(1), Expr::constant(Mode::flag2, Scalar(1)));
  z2.set(Coord::y(1), Expr::coordinate(Coord::y(2)));
  CHECK(f12.ladder(2) == z2);

  // goursat 1.1: Y[2] = Y[1] + x4 d_3
  Frame g(ClassCode::parse("1.1", Mode::goursat));
  VecField y2(g.chart());
  y2.set(Coord::g(1), Expr::constant(Mode::goursat, Scalar(1)));
  y2.set(Coord::g(2), Expr::coordinate(Coord::g(3)));
  y2.set(Coord::g(3), Expr::coordinate(Coord::g(4)));
  CHECK(g.ladder(2) == y2);
}

TEST_CASE("ladder fields are atom-free with jet-coordinate monomials") {
  for (const auto& code : enumerate_classes(4, Mode::flag2)) {
    Frame f(code);
    for (int j = 1; j <= 4; ++j) {
      CHECK(!f.ladder(j).has_atom());
      for (const auto& comp : f.ladder(j).components())
        for (const auto& t : comp.terms())
          for (const auto& [idx, e] : t.mono) CHECK(idx >= 3);
    }
  }
}

TEST_CASE("derived flag of the all-1 code adds coordinate fields") {
  Frame f(ClassCode::parse("1.1.1", Mode::flag2));
  auto flag = derived_flag(f);
  CHECK(flag.size() == 4);  // D^3, D^2, D^1, D^0
  Rng rng(11);
  PointSpec p = rng.random_point(f.chart());
  // D^{j-1} = D^j + span(d_x{j-1}, d_y{j-1}): compare evaluated spans
  for (int j = 3; j >= 1; --j) {
    auto prev = flag[3 - j];
    prev.push_back(VecField::coordinate_field(f.chart(), Coord::x(j - 1)));
    prev.push_back(VecField::coordinate_field(f.chart(), Coord::y(j - 1)));
    QMat a = evaluate_span(prev, p);
    QMat b = evaluate_span(flag[3 - j + 1], p);
    CHECK(span_included(a, b));
    CHECK(span_included(b, a));
  }
}

TEST_CASE("derived flag ranks at generic points: 3,5,...,2r+3 (flag2)") {
  Rng rng(5);
  for (const auto& code : enumerate_classes(3, Mode::flag2)) {
    Frame f(code);
    auto flag = derived_flag(f);
    PointSpec p = rng.random_point(f.chart());
    for (size_t k = 0; k < flag.size(); ++k)
      CHECK(rank_of(evaluate_span(flag[k], p)) == 3 + 2 * static_cast<int>(k));
  }
  Frame f2(ClassCode::parse("1.2", Mode::flag2));
  auto flag = derived_flag(f2);
  PointSpec p = rng.random_point(f2.chart());
  std::vector<int> ranks;
  for (const auto& gens : flag) ranks.push_back(rank_of(evaluate_span(gens, p)));
  CHECK(ranks == std::vector<int>{3, 5, 7});
}

TEST_CASE("derived flag ranks grow by one (goursat)") {
  Frame f(ClassCode::parse("1.1.2", Mode::goursat));
  auto flag = derived_flag(f);
  Rng rng(23);
  PointSpec p = rng.random_point(f.chart());
  std::vector<int> ranks;
  for (const auto& gens : flag) ranks.push_back(rank_of(evaluate_span(gens, p)));
  CHECK(ranks == std::vector<int>{2, 3, 4, 5});
}

TEST_CASE("bracket closure [D^j, D^j] in D^{j-1}, length <= 4 sample") {
  for (const char* word : {"1.2.1.2", "1.1.2.3", "1.2.3.1", "1.1.1.1"}) {
    Frame f(ClassCode::parse(word, Mode::flag2));
    auto flag = derived_flag(f);
    int r = 4;
    for (int j = r; j >= 1; --j) {
      const auto& gens = flag[r - j];
      // decompose each bracket in the generators of D^{j-1}: here we verify
      // membership via evaluated spans at several rational points plus the
      // structural fact that derived_flag's D^{j-1} literally contains them
      Rng rng(j);
      for (size_t a = 0; a < gens.size(); ++a)
        for (size_t b = a + 1; b < gens.size(); ++b) {
          VecField br = lie_bracket(gens[a], gens[b]);
          if (br.is_zero()) continue;
          for (int trial = 0; trial < 3; ++trial) {
            PointSpec p = rng.random_point(f.chart());
            QMat sub = evaluate_span({br}, p);
            QMat big = evaluate_span(flag[r - j + 1], p);
            CHECK(span_included(sub, big));
          }
        }
    }
  }
}

TEST_CASE("covariant F is involutive and lies in D^1") {
  Frame f(ClassCode::parse("1.2.3", Mode::flag2));
  std::vector<VecField> Fgens;
  for (int i = 1; i <= 3; ++i) {
    Fgens.push_back(VecField::coordinate_field(f.chart(), Coord::x(i)));
    Fgens.push_back(VecField::coordinate_field(f.chart(), Coord::y(i)));
  }
  for (const auto& a : Fgens)
    for (const auto& b : Fgens) CHECK(lie_bracket(a, b).is_zero());
  auto flag = derived_flag(f);
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    PointSpec p = rng.random_point(f.chart());
    CHECK(span_included(evaluate_span(Fgens, p), evaluate_span(flag[2], p)));
  }
}

TEST_CASE("L(D^j) = D^{j+1} cap F has corank 1 in D^{j+1}") {
  Frame f(ClassCode::parse("1.2.1.3", Mode::flag2));
  int r = 4;
  auto flag = derived_flag(f);
  std::vector<VecField> Fgens;
  for (int i = 1; i <= r; ++i) {
    Fgens.push_back(VecField::coordinate_field(f.chart(), Coord::x(i)));
    Fgens.push_back(VecField::coordinate_field(f.chart(), Coord::y(i)));
  }
  Rng rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    // the corank-1 statement is pointwise only at generic points, so keep
    // every jet coordinate away from zero
    PointSpec p(f.chart());
    for (int i = 3; i < f.chart().dim(); ++i)
      p.set(f.chart().coord(i), Scalar(Rational(1 + rng.below(5), 1 + rng.below(3))));
    QMat Fmat = evaluate_span(Fgens, p);
    for (int j = 1; j < r; ++j) {
      QMat d = evaluate_span(flag[r - j - 1], p);  // D^{j+1}
      QMat inter = span_intersection(d, Fmat);
      CHECK(static_cast<int>(inter.size()) == rank_of(d) - 1);
    }
  }
}

TEST_CASE("decompose in the top generators") {
  Frame f(ClassCode::parse("1.2.1", Mode::flag2));
  auto d = decompose(f.ladder(3), f);
  CHECK(d.ok);
  CHECK(d.a == Expr::constant(Mode::flag2, Scalar(1)));
  CHECK(d.b.is_zero());
  CHECK(d.c.is_zero());

  auto bad = decompose(VecField::coordinate_field(f.chart(), Coord::x(0)), f);
  CHECK(!bad.ok);
  CHECK(!bad.residual[Coord::x(0)].is_zero());

  // goursat
  Frame g(ClassCode::parse("1.1.2", Mode::goursat));
  auto dg = decompose(g.ladder(3), g);
  CHECK(dg.ok);
  CHECK(dg.a == Expr::constant(Mode::goursat, Scalar(1)));
}

TEST_CASE("small growth vectors of the paper's length-2 charts") {
  Frame f12(ClassCode::parse("1.2", Mode::flag2));
  PointSpec origin(f12.chart());
  CHECK(small_growth_vector(f12, origin) == std::vector<int>{3, 5, 6, 7});

  PointSpec p(f12.chart());
  p.set(Coord::x(2), Scalar(1));
  CHECK(small_growth_vector(f12, p) == std::vector<int>{3, 5, 7});

  Frame f11(ClassCode::parse("1.1", Mode::flag2));
  Rng rng(99);
  for (int trial = 0; trial < 3; ++trial)
    CHECK(small_growth_vector(f11, rng.random_point(f11.chart())) ==
          std::vector<int>{3, 5, 7});

  PointSpec sym(f12.chart());
  sym.set(Coord::x(2), Scalar::param("c"));
  CHECK_THROWS_AS(small_growth_vector(f12, sym), std::invalid_argument);
}

TEST_CASE("classify_point: degenerate and generic points") {
  // all-1 chart: no degeneracy anywhere
  Frame f111(ClassCode::parse("1.1.1", Mode::flag2));
  Rng rng(123);
  CHECK(classify_point(f111, PointSpec(f111.chart())).word() == "1.1.1");
  CHECK(classify_point(f111, rng.random_point(f111.chart())).word() == "1.1.1");

  // 1.2 chart: the class at the origin, generic elsewhere
  Frame f12(ClassCode::parse("1.2", Mode::flag2));
  CHECK(classify_point(f12, PointSpec(f12.chart())).word() == "1.2");
  PointSpec p(f12.chart());
  p.set(Coord::x(2), Scalar(1));
  CHECK(classify_point(f12, p).word() == "1.1");
}

TEST_CASE("classify_point at the reference points of the orbit table") {
  Frame f(ClassCode::parse("1.2.1.1", Mode::flag2));
  for (const auto& [name, p] : orbit_table())
    CHECK(classify_point(f, p).word() == "1.2.1.1");
}

TEST_CASE("classify_point at the length-7 modulus point") {
  ClassCode code = ClassCode::parse("1.2.1.2.1.2.1", Mode::flag2);
  Frame f(code);
  PointSpec p = PointSpec::parse(f.chart(), "x3=1,x5=1,x7=2");
  CHECK(classify_point(f, p).word() == "1.2.1.2.1.2.1");
}

TEST_CASE("generic points of every length-3 chart are all-transverse") {
  Rng rng(7);
  for (const auto& code : enumerate_classes(3, Mode::flag2)) {
    Frame f(code);
    PointSpec p(f.chart());
    for (int i = 3; i < f.chart().dim(); ++i)
      p.set(f.chart().coord(i), Scalar(Rational(1 + rng.below(5), 1 + rng.below(3))));
    CHECK(classify_point(f, p).word() == "1.1.1");
  }
}
