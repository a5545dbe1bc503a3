#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "gangle/gangle.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gangle;
using namespace gangle::testing;

using Q = Rational;
using QV = SparseVector<Q>;
using DV = SparseVector<double>;

namespace {

const SpaceSpec<Q> l1q = SpaceSpec<Q>::lp(1);
const SpaceSpec<Q> l2q = SpaceSpec<Q>::lp(2);
constexpr double pi = std::numbers::pi;

Subspace<Q> coordinate_space(std::size_t n) {
  std::vector<QV> b;
  for (Index i = 1; i <= n; ++i) b.push_back(QV::unit(i));
  return Subspace<Q>(b, l1q);
}

}  // namespace

TEST(AngleVectors, ParallelAndOpposite) {
  const QV x{1, -2, 3};
  const auto same = angle_vectors(x, scale(Q(3), x), l1q);
  EXPECT_EQ(same.cos_sq, Q(1));
  EXPECT_EQ(same.angle_rad, 0.0);
  const auto opp = angle_vectors(x, -x, l1q);
  EXPECT_EQ(*opp.cosine, Q(-1));
  EXPECT_DOUBLE_EQ(opp.angle_rad, pi);
  EXPECT_EQ(same.path, AnglePath::vector);
}

TEST(AngleVectors, ArgumentOrderMatters) {
  const QV x{1, 1}, y{-1, 2};
  const auto xy = angle_vectors(x, y, l1q);
  EXPECT_EQ(xy.cos_sq, Q(0));
  EXPECT_DOUBLE_EQ(xy.angle_rad, pi / 2);
  const auto yx = angle_vectors(y, x, l1q);
  EXPECT_EQ(*yx.cosine, Q(1, 3));
  EXPECT_DOUBLE_EQ(yx.angle_rad, std::acos(1.0 / 3.0));
}

TEST(AngleVectors, ZeroVector) {
  EXPECT_THROW(angle_vectors(QV{}, QV{1}, l1q), degenerate_error);
  EXPECT_THROW(angle_vectors(QV{1}, QV{}, l1q), degenerate_error);
}

TEST(AngleVectors, IrrationalNormsStillGiveExactCosSq) {
  const auto r = angle_vectors(QV{1, 1}, QV{1, 0}, l2q);
  EXPECT_EQ(r.cos_sq, Q(1, 2));
  EXPECT_FALSE(r.cosine.has_value());
  EXPECT_NEAR(r.angle_rad, pi / 4, 1e-15);
}

TEST(AngleVectors, Homogeneity) {
  Rng rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    const QV x = random_vector<Q>(rng), y = random_vector<Q>(rng);
    const Q a = random_nonzero<Q>(rng), b = random_nonzero<Q>(rng);
    const auto base = angle_vectors(x, y, l1q);
    const auto moved = angle_vectors(scale(a, x), scale(b, y), l1q);
    EXPECT_EQ(moved.cos_sq, base.cos_sq);
    ASSERT_TRUE(base.cosine && moved.cosine);
    EXPECT_EQ(*moved.cosine, sgn(a * b) * *base.cosine);
    const double want = a * b > 0 ? base.angle_rad : pi - base.angle_rad;
    EXPECT_NEAR(moved.angle_rad, want, 1e-12);

    const QV k = scale(random_nonzero<Q>(rng), x);
    EXPECT_NEAR(angle_vectors(x, k, l1q).angle_rad, sgn(k[x.entries()[0].first] * x.entries()[0].second) > 0 ? 0.0 : pi, 1e-12);
  }
}

TEST(AngleVectors, ContinuityInFirstArgument) {
  Rng rng(52);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto sp = SpaceSpec<double>::lp(p);
    for (int trial = 0; trial < 50; ++trial) {
      const DV x = random_vector<double>(rng), y = random_vector<double>(rng);
      const DV d = random_vector<double>(rng);
      const auto base = angle_vectors(x, y, sp);
      if (std::abs(*base.cosine) > 0.99) continue;
      double prev = INFINITY;
      for (int n : {10, 100, 1000, 10000, 100000}) {
        const double err =
            std::abs(angle_vectors(add(x, scale(1.0 / n, d)), y, sp).angle_rad - base.angle_rad);
        EXPECT_LE(err, prev + 1e-12) << p;
        prev = err;
      }
      EXPECT_LE(prev, 1e-3) << p;
    }
  }
}

TEST(SemiInner, NonContinuitySequence) {
  // y_n -> y = (0, 1) and x_n -> x = (1, 1), but g(y_n, x_n) -> 2 != g(y, x) = 1.
  EXPECT_EQ(g(QV{0, 1}, QV{1, 1}, l1q), Q(1));
  for (int n = 1; n <= 1000; n *= 10) {
    const Q inv(1, n);
    const Q got = g(QV{inv, Q(1)}, QV{Q(1) + inv, Q(1)}, l1q);
    EXPECT_EQ(got, (Q(1) + inv) * (Q(1) + inv + Q(1)));
  }
  EXPECT_GT(g(QV{Q(1, 1000000), Q(1)}, QV{Q(1000001, 1000000), Q(1)}, l1q), Q(19, 10));
}

TEST(Angle1t, WorkedExample) {
  const auto r = angle_1t(QV{1, 2, 1}, coordinate_space(2));
  EXPECT_EQ(r.cos_sq, Q(9, 16));
  EXPECT_EQ(*r.ratio_form, Q(9, 16));
  EXPECT_EQ(*r.form_gap, Q(0));
  EXPECT_DOUBLE_EQ(r.angle_rad, std::acos(0.75));
  EXPECT_EQ(r.path, AnglePath::dim1_projection);
  EXPECT_EQ(cos2_explicit(QV{1, 2, 1}, coordinate_space(2)), Q(9, 16));

  const auto sp = SpaceSpec<double>::lp(1);
  const Subspace<double> vf({DV{1}, DV{0, 1}}, sp);
  EXPECT_NEAR(angle_1t(DV{1, 2, 1}, vf).cos_sq, 0.5625, 1e-12);
  EXPECT_NEAR(cos2_explicit(DV{1, 2, 1}, vf), 0.5625, 1e-12);
}

TEST(Angle1t, Containment) {
  Rng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<QV> b = random_basis<Q>(rng, l1q, 2);
    const Subspace<Q> v(b, l1q);
    const QV u = add(scale(random_nonzero<Q>(rng), b[0]), scale(random_coord<Q>(rng), b[1]));
    EXPECT_EQ(angle_1t(u, v).cos_sq, Q(1));
    EXPECT_EQ(angle_1t(u, v).angle_rad, 0.0);
    EXPECT_EQ(cos2_explicit(u, v), Q(1));
  }
}

TEST(Angle1t, EuclideanQuarterTurn) {
  const auto r = angle_1t(QV{1, 1}, Subspace<Q>({QV::unit(1)}, l2q));
  EXPECT_EQ(r.cos_sq, Q(1, 2));
  EXPECT_NEAR(r.angle_rad, pi / 4, 1e-15);
}

TEST(Angle1t, OrthogonalGivesRightAngle) {
  const auto r = angle_1t(QV{0, 0, 5}, coordinate_space(2));
  EXPECT_EQ(r.cos_sq, Q(0));
  EXPECT_DOUBLE_EQ(r.angle_rad, pi / 2);
  EXPECT_FALSE(r.form_gap.has_value());
}

TEST(Angle1t, Errors) {
  EXPECT_THROW(angle_1t(QV{}, coordinate_space(2)), degenerate_error);
  EXPECT_THROW(angle_1t(QV{1}, Subspace<Q>({QV{1, 2}, QV{2, 1}}, l1q)), degenerate_error);
}

TEST(Angle1t, EquationAndRatioFormSurvey) {
  // The two forms coincide for inner products; elsewhere the gap is measured.
  Rng rng(54);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto sp = SpaceSpec<double>::lp(p);
    int differ = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const Subspace<double> v(random_basis<double>(rng, sp, 1 + trial % 3), sp);
      const auto r = angle_1t(random_vector<double>(rng), v);
      EXPECT_GE(r.cos_sq, 0.0);
      EXPECT_LE(r.cos_sq, 1.0);
      if (r.form_gap && std::abs(*r.form_gap) > 1e-10) ++differ;
    }
    RecordProperty("gap_p" + to_decimal_string(p), differ);
    if (p == 2.0) {
      EXPECT_EQ(differ, 0);
    }
  }
}

TEST(ExplicitSum, Errors) {
  const QV u{1, 2, 3, 4};
  EXPECT_THROW(cos2_explicit(u, coordinate_space(4)), input_error);
  EXPECT_THROW(cos2_explicit(QV{}, coordinate_space(2)), degenerate_error);
  EXPECT_THROW(cos2_explicit(u, Subspace<Q>({QV{1, 2}, QV{2, 1}}, l1q)), degenerate_error);
  EXPECT_THROW(cos2_explicit(DV{1, 2}, Subspace<double>({DV{1}}, builtin_oracle("l2"))),
               std::exception);
}

TEST(ExplicitSum, MatchesProjectionOnOrthonormalizedBasis) {
  Rng rng(55);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto sp = SpaceSpec<double>::lp(p);
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t t = 1 + trial % 3;
      const auto b = random_basis<double>(rng, sp, t);
      const DV u = random_vector<double>(rng);
      const auto star = Subspace<double>(left_orthonormalize(b, sp), sp);
      const double want = *angle_1t(u, star).ratio_form;
      EXPECT_NEAR(cos2_explicit(u, Subspace<double>(b, sp)), want, 1e-8 * (1 + want)) << p << " t=" << t;
    }
  }
  for (int trial = 0; trial < 150; ++trial) {
    const auto b = random_basis<Q>(rng, l1q, 1 + trial % 3);
    const QV u = random_vector<Q>(rng);
    const auto star = Subspace<Q>(left_orthonormalize(b, l1q), l1q);
    EXPECT_EQ(cos2_explicit(u, Subspace<Q>(b, l1q)), *angle_1t(u, star).ratio_form);
  }
}

TEST(ExplicitSum, MatchesRatioFormWhenOrthonormalizationIsHarmless) {
  // One basis vector, or the Euclidean case: projection does not depend on
  // the basis, so the given basis and its orthonormalization agree.
  Rng rng(56);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto sp = SpaceSpec<double>::lp(p);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t t = p == 2.0 ? 1 + trial % 3 : 1;
      const Subspace<double> v(random_basis<double>(rng, sp, t), sp);
      const DV u = random_vector<double>(rng);
      const double want = *angle_1t(u, v).ratio_form;
      EXPECT_NEAR(cos2_explicit(u, v), want, 1e-8 * (1 + want)) << p;
    }
  }
}

TEST(Lambda, LambdaCounterexample) {
  const QV x{3, 1}, y{-2, 0}, z{0, 2};
  const auto xy = lambda(x, y, l1q), xz = lambda(x, z, l1q), xyz = lambda(x, add(y, z), l1q);
  EXPECT_EQ(*xy.exact_value, Q(4));
  EXPECT_EQ(xz.value_sq, Q(48));
  EXPECT_FALSE(xz.exact_value.has_value());
  EXPECT_NEAR(xz.value, 4 * std::sqrt(3.0), 1e-12);
  EXPECT_EQ(*xyz.exact_value, Q(16));
  EXPECT_GT(xyz.value, xy.value + xz.value);
  EXPECT_EQ(g(y, z, l1q), Q(0));
  EXPECT_EQ(g(y, x, l1q), Q(-6));
}

TEST(Lambda, ZeroAndDependent) {
  EXPECT_EQ(lambda(QV{}, QV{1, 2}, l1q).value_sq, Q(0));
  EXPECT_EQ(lambda(QV{1, -2}, QV{-3, 6}, l1q).value_sq, Q(0));
}

TEST(Lambda, EuclideanArea) {
  Rng rng(57);
  const auto sp = SpaceSpec<double>::lp(2);
  for (int trial = 0; trial < 200; ++trial) {
    const DV x = random_vector<double>(rng, 4), y = random_vector<double>(rng, 4);
    const auto m = columns({x, y}, 4);
    const double area = std::sqrt(std::max(0.0, (m.transpose() * m).determinant()));
    EXPECT_NEAR(lambda(x, y, sp).value, area, 1e-10 * (1 + area));
  }
}

template <Scalar T>
void lambda_properties(const PCase& pc, std::uint64_t seed) {
  Rng rng(seed);
  const auto sp = SpaceSpec<T>::lp(pc.p);
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = random_vector<T>(rng), y = random_vector<T>(rng);
    const T a = random_nonzero<T>(rng);
    const auto l = lambda(x, y, sp);
    const T bound = norm_sq(x, sp) * norm_sq(y, sp);
    EXPECT_GE(l.value_sq, T(0)) << pc.label();
    EXPECT_LE(l.value_sq, bound) << pc.label();
    EXPECT_TRUE(close(lambda(y, x, sp).value_sq, l.value_sq, 1e-12, to_double(bound))) << pc.label();
    EXPECT_TRUE(close(lambda(scale(a, x), y, sp).value_sq, T(a * a * l.value_sq), 1e-12,
                      to_double(a * a * bound)))
        << pc.label();
    EXPECT_TRUE(close(lambda(x, scale(a, x), sp).value_sq, T(0), 1e-12, to_double(a * a * bound)))
        << pc.label();
  }
}

TEST(Lambda, Properties) {
  std::uint64_t seed = 500;
  for (const auto& pc : p_cases()) {
    if (pc.exact)
      lambda_properties<Q>(pc, ++seed);
    else
      lambda_properties<double>(pc, ++seed);
  }
}

TEST(Angle2t, FourDimensionalExample) {
  const QV u1{1, 1, 2, 3}, u2{2, 1, -3, 2};
  const Subspace<Q> u({u1, u2}, l1q);
  const auto v = coordinate_space(3);
  const auto p1 = project(u1, v).projected, p2 = project(u2, v).projected;
  EXPECT_EQ(norm(u1, l1q), Q(7));
  EXPECT_EQ(norm(u2, l1q), Q(8));
  EXPECT_EQ(norm(p1, l1q), Q(4));
  EXPECT_EQ(norm(p2, l1q), Q(6));
  EXPECT_EQ(p2, (QV{2, 1, -3}));
  EXPECT_EQ(g(p1, p2, l1q), Q(0));
  EXPECT_EQ(g(p2, p1, l1q), Q(0));
  EXPECT_EQ(lambda(u1, u2, l1q).value_sq, Q(2800));
  EXPECT_EQ(lambda(p1, p2, l1q).value_sq, Q(576));
  const auto r = angle_2t(u, v);
  EXPECT_EQ(r.cos_sq, Q(36, 175));
  EXPECT_NE(r.cos_sq, Q(36, 167));
  EXPECT_EQ(r.path, AnglePath::dim2_lambda);
}

TEST(Angle2t, Containment) {
  Rng rng(58);
  for (int trial = 0; trial < 100; ++trial) {
    const auto b = random_basis<Q>(rng, l1q, 3);
    const Subspace<Q> u({b[0], add(b[1], b[2])}, l1q);
    try {
      EXPECT_EQ(angle_2t(u, Subspace<Q>(b, l1q)).cos_sq, Q(1));
    } catch (const degenerate_error&) {
      // Lambda can vanish for independent pairs in l^1
    }
  }
}

TEST(Angle2t, Errors) {
  const auto v = coordinate_space(3);
  EXPECT_THROW(angle_2t(Subspace<Q>({QV{1}}, l1q), v), input_error);
  EXPECT_THROW(angle_2t(Subspace<Q>({QV{1}, QV{0, 1}}, l1q), coordinate_space(1)), input_error);
  EXPECT_THROW(angle_2t(Subspace<Q>({QV{1, 2}, QV{2, 4}}, l1q), v), degenerate_error);
  EXPECT_THROW(angle_2t(Subspace<Q>({QV{1}, QV{0, 1}}, l1q), Subspace<Q>({QV{1, 2}, QV{2, 1}}, l1q)),
               degenerate_error);
  EXPECT_THROW(angle_2t(Subspace<Q>({QV{1}, QV{0, 1}}, l2q), v), input_error);
}

TEST(Angle2t, MoveTwoChangesTheL1Value) {
  // u_1 <- u_1 + alpha u_2 is not a symmetry of the Lambda ratio in l^1.
  const QV u1{1, 1, 2, 3}, u2{2, 1, -3, 2};
  const auto v = coordinate_space(3);
  EXPECT_EQ(angle_2t(Subspace<Q>({u1 - u2, u2}, l1q), v).cos_sq, Q(27, 287));
  EXPECT_THROW(angle_2t(Subspace<Q>({u1 + u2, u2}, l1q), v), degenerate_error);
}

template <Scalar T>
void angle_2t_moves(const PCase& pc, std::uint64_t seed) {
  Rng rng(seed);
  const auto sp = SpaceSpec<T>::lp(pc.p);
  int checked = 0, out_of_range = 0;
  for (int trial = 0; trial < 400 && checked < 100; ++trial) {
    const std::size_t t = 2 + trial % 2;
    const auto ub = random_basis<T>(rng, sp, 2);
    const auto vb = random_basis<T>(rng, sp, t);
    const Subspace<T> v(vb, sp);
    AngleResult<T> base;
    try {
      base = angle_2t(Subspace<T>(ub, sp), v);
    } catch (const degenerate_error&) {
      continue;
    } catch (const property_violation&) {
      // cos^2 above 1: projections may be longer than the projected vectors
      ++out_of_range;
      continue;
    }
    ++checked;
    EXPECT_GE(base.cos_sq, T(0)) << pc.label();
    EXPECT_LE(base.cos_sq, T(1)) << pc.label();
    const auto same = [&](const AngleResult<T>& r) { return close(r.cos_sq, base.cos_sq, 1e-10, 1.0); };
    EXPECT_TRUE(same(angle_2t(Subspace<T>({ub[1], ub[0]}, sp), v))) << pc.label();
    const T a = random_nonzero<T>(rng);
    EXPECT_TRUE(same(angle_2t(Subspace<T>({scale(a, ub[0]), ub[1]}, sp), v))) << pc.label();
    std::vector<SparseVector<T>> vs = vb;
    for (auto& b : vs) b = scale(random_nonzero<T>(rng), b);
    std::reverse(vs.begin(), vs.end());
    EXPECT_TRUE(same(angle_2t(Subspace<T>(ub, sp), Subspace<T>(vs, sp)))) << pc.label();
    if (pc.p == 2.0) {
      const auto shear = Subspace<T>({add(ub[0], scale(a, ub[1])), ub[1]}, sp);
      EXPECT_TRUE(same(angle_2t(shear, v))) << pc.label();
      const auto rv = Subspace<T>(recombine(vb, random_invertible<T>(rng, t)), sp);
      EXPECT_TRUE(same(angle_2t(Subspace<T>(ub, sp), rv))) << pc.label();
    }
  }
  EXPECT_GE(checked, 50) << pc.label();
  ::testing::Test::RecordProperty("out_of_range_" + pc.label(), out_of_range);
  if (pc.p == 2.0) {
    EXPECT_EQ(out_of_range, 0);
  }
}

TEST(Angle2t, Invariances) {
  std::uint64_t seed = 600;
  for (const auto& pc : p_cases()) {
    if (pc.exact)
      angle_2t_moves<Q>(pc, ++seed);
    else
      angle_2t_moves<double>(pc, ++seed);
  }
}

TEST(EuclideanReduction, PrincipalAngles) {
  Rng rng(59);
  const auto sp = SpaceSpec<double>::lp(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t t = 2 + trial % 2;
    const auto vb = random_basis<double>(rng, sp, t, 6);
    const auto ub = random_basis<double>(rng, sp, 2, 6);
    const Subspace<double> v(vb, sp);
    const auto vm = columns(vb, 6);

    const auto c1 = principal_cosines(columns({ub[0]}, 6), vm);
    EXPECT_NEAR(angle_1t(ub[0], v).cos_sq, c1(0) * c1(0), 1e-10);
    EXPECT_NEAR(cos2_explicit(ub[0], v), c1(0) * c1(0), 1e-10);

    const auto c2 = principal_cosines(columns(ub, 6), vm);
    EXPECT_NEAR(angle_2t(Subspace<double>(ub, sp), v).cos_sq, std::pow(c2(0) * c2(1), 2), 1e-10);

    const auto ux = dense(ub[0], 6), uy = dense(ub[1], 6);
    EXPECT_NEAR(*angle_vectors(ub[0], ub[1], sp).cosine, ux.dot(uy) / (ux.norm() * uy.norm()), 1e-10);
  }
}
