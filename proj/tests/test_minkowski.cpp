#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coexist/minkowski.hpp"
#include "coexist/sampling.hpp"
#include "matrix_oracle.hpp"

using namespace coexist;

namespace {

MVec4 random_vec(std::mt19937_64& rng, double scale = 1.0) {
  auto u = [&] { return scale * (2.0 * EffectSampler::uniform01(rng) - 1.0); };
  return {u(), u(), u(), u()};
}

MVec3 random_vec3(std::mt19937_64& rng, double scale = 1.0) {
  auto u = [&] { return scale * (2.0 * EffectSampler::uniform01(rng) - 1.0); };
  return {u(), u(), u()};
}

}  // namespace

TEST_CASE("mdot matches the displayed bilinear form") {
  CHECK(mdot(MVec4::identity(), MVec4::identity()) == doctest::Approx(1.0));
  const MVec4 e{0.5, 0.0, 0.0, 0.5};
  const MVec4 f{0.5, 0.5, 0.0, 0.0};
  CHECK(mdot(e, f) == doctest::Approx(0.25));
  // Matrix-level oracle for the same pair.
  CHECK(oracle::polarized_det(e, f) == doctest::Approx(0.25));
}

TEST_CASE("mdot agrees with the matrix polarization and determinant") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 10000; ++i) {
    const MVec4 x = random_vec(rng);
    const MVec4 y = random_vec(rng);
    CHECK(mdot(x, y) == doctest::Approx(oracle::polarized_det(x, y)).epsilon(1e-12));
    const double d = oracle::det(oracle::assemble(x)).real();
    CHECK(mdot(x, x) == doctest::Approx(d).epsilon(1e-12));
  }
}

TEST_CASE("mdot is bilinear and symmetric") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const MVec4 x = random_vec(rng), y = random_vec(rng), z = random_vec(rng);
    const double s = 2.0 * EffectSampler::uniform01(rng) - 1.0;
    CHECK(mdot(x, y) == doctest::Approx(mdot(y, x)));
    CHECK(mdot(x + s * y, z) == doctest::Approx(mdot(x, z) + s * mdot(y, z)).epsilon(1e-12));
  }
}

TEST_CASE("classify tags the canonical vectors") {
  const CausalClass one = classify(MVec4::identity());
  CHECK(one.tag == CausalTag::Timelike);
  CHECK(one.orientation == Orientation::Forward);

  const CausalClass proj = classify({0.5, 0.0, 0.0, 0.5});
  CHECK(proj.tag == CausalTag::Lightlike);
  CHECK(proj.orientation == Orientation::Forward);

  // Difference of orthogonal projections: (0, -1/2, 0, 1/2), <d|d> = -1/2.
  const MVec4 d{0.0, -0.5, 0.0, 0.5};
  CHECK(mdot(d, d) == doctest::Approx(-0.5));
  const CausalClass dc = classify(d);
  CHECK(dc.tag == CausalTag::Spacelike);
  CHECK(dc.orientation == Orientation::None);

  const CausalClass zero = classify(MVec4::zero());
  CHECK(zero.tag == CausalTag::Zero);
  CHECK(zero.orientation == Orientation::None);

  const CausalClass back = classify(-MVec4::identity());
  CHECK(back.tag == CausalTag::Timelike);
  CHECK(back.orientation == Orientation::Backward);
}

TEST_CASE("precedes: canonical cases") {
  CHECK(precedes(MVec4::zero(), MVec4::identity()));
  const MVec4 e{0.5, 0.0, 0.0, 0.5};
  const MVec4 f{0.5, 0.5, 0.0, 0.0};
  CHECK_FALSE(precedes(e, f));
  CHECK_FALSE(precedes(f, e));
  CHECK(precedes(e, e));  // reflexivity
}

TEST_CASE("precedes agrees with the eigenvalue test on random pairs") {
  std::mt19937_64 rng(77);
  const double tol = kDefaultTol;
  for (int i = 0; i < 10000; ++i) {
    const MVec4 x = random_vec(rng);
    const MVec4 y = random_vec(rng);
    const auto eig = oracle::eigenvalues(oracle::assemble(y - x));
    CHECK(precedes(x, y, tol) == (eig[0] >= -tol));
  }
}

TEST_CASE("lightlike order") {
  const MVec4 proj{0.5, 0.0, 0.0, 0.5};
  CHECK(lightlike_precedes(MVec4::zero(), proj));
  CHECK_FALSE(lightlike_precedes(MVec4::zero(), MVec4::identity()));
  const MVec4 x{0.3, 0.1, 0.0, 0.2};
  CHECK(lightlike_precedes(x, x));
}

TEST_CASE("cross_o formula and hand value") {
  const MVec3 ex{0.0, 1.0, 0.0};
  const MVec3 ey{0.0, 0.0, 1.0};
  const MVec3 w = cross_o(ex, ey);
  CHECK(w.c0 == doctest::Approx(1.0));
  CHECK(w.c1 == doctest::Approx(0.0));
  CHECK(w.c2 == doctest::Approx(0.0));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const MVec3 x = random_vec3(rng);
    const MVec3 self = cross_o(x, x);
    CHECK(std::abs(self.c0) + std::abs(self.c1) + std::abs(self.c2) == doctest::Approx(0.0));
  }
}

TEST_CASE("cross_o identity suite") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const MVec3 x = random_vec3(rng), y = random_vec3(rng), z = random_vec3(rng);
    const MVec3 xt = random_vec3(rng), yt = random_vec3(rng);

    // antisymmetry
    const MVec3 anti = cross_o(x, y) + cross_o(y, x);
    CHECK(std::abs(anti.c0) <= 1e-12);
    CHECK(std::abs(anti.c1) <= 1e-12);
    CHECK(std::abs(anti.c2) <= 1e-12);

    // double product expansion
    const MVec3 lhs = cross_o(x, cross_o(y, z));
    const MVec3 rhs = mdot(x, z) * y - mdot(x, y) * z;
    CHECK(std::abs(lhs.c0 - rhs.c0) <= 1e-12);
    CHECK(std::abs(lhs.c1 - rhs.c1) <= 1e-12);
    CHECK(std::abs(lhs.c2 - rhs.c2) <= 1e-12);

    // orthogonality to both factors
    CHECK(std::abs(mdot(x, cross_o(x, y))) <= 1e-12);
    CHECK(std::abs(mdot(y, cross_o(x, y))) <= 1e-12);

    // product of two cross products
    const double prod = mdot(cross_o(x, y), cross_o(xt, yt));
    const double expanded = mdot(x, xt) * mdot(y, yt) - mdot(x, yt) * mdot(xt, y);
    CHECK(std::abs(prod - expanded) <= 1e-12);
  }
}

TEST_CASE("cross_o vanishes exactly for collinear factors") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 1000; ++i) {
    const MVec3 x = random_vec3(rng);
    const double s = 2.0 * EffectSampler::uniform01(rng) - 1.0;
    const MVec3 c = cross_o(x, s * x);
    CHECK(std::abs(c.c0) <= 1e-14);
    CHECK(std::abs(c.c1) <= 1e-14);
    CHECK(std::abs(c.c2) <= 1e-14);

    // and is nonzero for generic non-collinear pairs
    const MVec3 y = random_vec3(rng);
    const MVec3 w = cross_o(x, y);
    const double norm = std::abs(w.c0) + std::abs(w.c1) + std::abs(w.c2);
    if (norm <= 1e-14) {
      // only collinear pairs may produce zero; verify collinearity
      const double det01 = x.c0 * y.c1 - x.c1 * y.c0;
      const double det02 = x.c0 * y.c2 - x.c2 * y.c0;
      const double det12 = x.c1 * y.c2 - x.c2 * y.c1;
      CHECK(std::abs(det01) + std::abs(det02) + std::abs(det12) <= 1e-13);
    }
  }
}

TEST_CASE("rotations preserve the scalar product and act as expected") {
  const Rotation3 id = Rotation3::identity();
  const MVec4 x{0.3, 0.1, -0.2, 0.4};
  const MVec4 same = rotate_spatial(x, id);
  CHECK(same.c0 == x.c0);
  CHECK(same.c1 == x.c1);

  // quarter turn about z maps (1/2, 1/2, 0, 0) to (1/2, 0, 1/2, 0)
  const Rotation3 quarter = Rotation3::about_axis({0, 0, 1}, std::acos(-1.0) / 2.0);
  const MVec4 rotated = rotate_spatial({0.5, 0.5, 0.0, 0.0}, quarter);
  CHECK(rotated.c0 == doctest::Approx(0.5));
  CHECK(rotated.c1 == doctest::Approx(0.0));
  CHECK(rotated.c2 == doctest::Approx(0.5));
  CHECK(rotated.c3 == doctest::Approx(0.0));

  std::mt19937_64 rng(8);
  for (int i = 0; i < 2000; ++i) {
    const auto axis = EffectSampler::unit_vector(rng);
    const double angle = 2.0 * std::acos(-1.0) * EffectSampler::uniform01(rng);
    const Rotation3 rot = Rotation3::about_axis(axis, angle);
    CHECK(rot.is_proper());
    const MVec4 a = random_vec(rng), b = random_vec(rng);
    CHECK(mdot(rotate_spatial(a, rot), rotate_spatial(b, rot)) ==
          doctest::Approx(mdot(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("improper matrices are rejected") {
  std::array<double, 9> reflect = {1, 0, 0, 0, 1, 0, 0, 0, -1};
  CHECK_THROWS_AS((void)Rotation3::from_matrix(reflect), Error);
  std::array<double, 9> skew = {1, 0.5, 0, 0, 1, 0, 0, 0, 1};
  CHECK_THROWS_AS((void)Rotation3::from_matrix(skew), Error);
}

TEST_CASE("align_with_z maps the requested direction") {
  const Rotation3 rot = Rotation3::align_with_z({0.0, 0.25, 0.0});
  const auto z = rot.apply({0.0, 1.0, 0.0});
  CHECK(z[0] == doctest::Approx(0.0));
  CHECK(z[1] == doctest::Approx(0.0));
  CHECK(z[2] == doctest::Approx(1.0));
}

TEST_CASE("projection onto a coordinate subspace truncates") {
  const std::array<MVec4, 3> basis = {MVec4{1, 0, 0, 0}, MVec4{0, 1, 0, 0},
                                      MVec4{0, 0, 1, 0}};
  const MVec4 x{0.4, -0.3, 0.2, 0.9};
  const MVec4 p = project_onto_span(x, basis);
  CHECK(p.c0 == doctest::Approx(0.4));
  CHECK(p.c1 == doctest::Approx(-0.3));
  CHECK(p.c2 == doctest::Approx(0.2));
  CHECK(p.c3 == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("projection is idempotent on members") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const std::array<MVec4, 3> basis = {MVec4::identity(), random_vec(rng),
                                        random_vec(rng)};
    MVec4 member = 0.7 * basis[0] + (-0.4) * basis[1] + 1.3 * basis[2];
    MVec4 p;
    try {
      p = project_onto_span(member, basis);
    } catch (const Error&) {
      continue;  // degenerate random span
    }
    CHECK(std::abs(p.c0 - member.c0) <= 1e-10);
    CHECK(std::abs(p.c1 - member.c1) <= 1e-10);
    CHECK(std::abs(p.c2 - member.c2) <= 1e-10);
    CHECK(std::abs(p.c3 - member.c3) <= 1e-10);
  }
}

TEST_CASE("projection is selfadjoint and monotone") {
  std::mt19937_64 rng(23);
  int tested = 0;
  for (int i = 0; i < 12000 && tested < 10000; ++i) {
    const std::array<MVec4, 3> basis = {MVec4::identity(), random_vec(rng),
                                        random_vec(rng)};
    const MVec4 x = random_vec(rng);
    const MVec4 y = random_vec(rng);
    MVec4 px, py;
    try {
      px = project_onto_span(x, basis);
      py = project_onto_span(y, basis);
    } catch (const Error&) {
      continue;
    }
    ++tested;
    // selfadjointness <x|P y> = <P x|y>
    CHECK(std::abs(mdot(x, py) - mdot(px, y)) <= 1e-12);

    // monotone: build y2 = x + (positive operator) and compare projections
    const auto dir = EffectSampler::unit_vector(rng);
    const double r = EffectSampler::uniform01(rng);
    const double bump = EffectSampler::uniform01(rng);
    const MVec4 w{r + bump, r * dir[0], r * dir[1], r * dir[2]};
    const MVec4 y2 = x + w;
    CHECK(precedes(x, y2, 1e-12));
    CHECK(precedes(project_onto_span(x, basis), project_onto_span(y2, basis), 1e-9));
  }
  CHECK(tested >= 10000);
}

TEST_CASE("degenerate spans are rejected") {
  // rank < 3
  const std::array<MVec4, 3> flat = {MVec4::identity(), 2.0 * MVec4::identity(),
                                     MVec4{0, 1, 0, 0}};
  CHECK_THROWS_AS((void)project_onto_span(MVec4::identity(), flat), Error);

  // does not contain the identity
  const std::array<MVec4, 3> no_one = {MVec4{0, 1, 0, 0}, MVec4{0, 0, 1, 0},
                                       MVec4{0, 0, 0, 1}};
  try {
    (void)project_onto_span(MVec4::identity(), no_one);
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == Errc::DegenerateSubspace);
  }
}
