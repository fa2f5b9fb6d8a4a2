#include <doctest.h>

#include "uniprior/param_class.hpp"

using namespace uniprior;

TEST_SUITE("param_class") {

TEST_CASE("dense enumeration orders by denominator then numerator") {
  auto cls = ParamClass::dense(8);
  CHECK(cls.tag() == ClassTag::kDense);
  CHECK(cls.size() == 23);  /* reduced fractions with denominator <= 8 */

  const auto& t = cls.thetas();
  CHECK(t[0] == Rational(0));
  CHECK(t[1] == Rational(1));
  CHECK(t[2] == make_rational(1, 2));
  CHECK(t[3] == make_rational(1, 3));
  CHECK(t[4] == make_rational(2, 3));
  CHECK(t[5] == make_rational(1, 4));
  CHECK(t[6] == make_rational(3, 4));
  CHECK(t[7] == make_rational(1, 5));
  CHECK(t[22] == make_rational(7, 8));

  /* only reduced fractions appear: 2/4, 2/6, ... are already listed */
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) CHECK(t[i] != t[j]);
}

TEST_CASE("dense size grows with the mesh bound") {
  CHECK(ParamClass::dense(1).size() == 2);
  CHECK(ParamClass::dense(2).size() == 3);
  CHECK(ParamClass::dense(3).size() == 5);
  CHECK(ParamClass::dense(4).size() == 7);
  CHECK(ParamClass::dense(8).contains(make_rational(5, 7)));
  CHECK_FALSE(ParamClass::dense(8).contains(make_rational(1, 9)));
  CHECK_THROWS_AS(ParamClass::dense(0), ValidationError);
}

TEST_CASE("gapped classes keep their endpoints and jump the interior") {
  auto cls = ParamClass::gapped(make_rational(1, 4), make_rational(1, 2));
  CHECK(cls.tag() == ClassTag::kGapped);
  CHECK(cls.size() == 2);
  CHECK(cls.theta0() == make_rational(1, 4));
  CHECK(cls.theta1() == make_rational(1, 2));

  CHECK_THROWS_AS(ParamClass::gapped(make_rational(1, 2), make_rational(1, 4)), ValidationError);
  CHECK_THROWS_AS(ParamClass::gapped(make_rational(1, 4), make_rational(1, 4)), ValidationError);
  CHECK_THROWS_AS(ParamClass::gapped(Rational(0), make_rational(1, 2)), ValidationError);
}

TEST_CASE("gapped dense keeps the interval empty") {
  auto cls = ParamClass::gapped_dense(8, make_rational(1, 4), make_rational(1, 2));
  CHECK(cls.tag() == ClassTag::kGapped);
  CHECK(cls.contains(make_rational(1, 4)));
  CHECK(cls.contains(make_rational(1, 2)));
  CHECK(cls.contains(make_rational(3, 4)));
  CHECK_FALSE(cls.contains(make_rational(1, 3)));  /* interior point dropped */
  CHECK_FALSE(cls.contains(make_rational(3, 8)));
  CHECK_FALSE(cls.contains(make_rational(2, 5)));
  for (const auto& theta : cls.thetas()) {
    bool interior = theta > make_rational(1, 4) && theta < make_rational(1, 2);
    CHECK_FALSE(interior);
  }
}

TEST_CASE("custom classes validate their atoms") {
  auto cls = ParamClass::custom({make_rational(1, 3), make_rational(2, 3)});
  CHECK(cls.tag() == ClassTag::kCustom);
  CHECK(cls.size() == 2);
  CHECK_THROWS_AS(ParamClass::custom({}), ValidationError);
  CHECK_THROWS_AS(ParamClass::custom({make_rational(1, 2), make_rational(1, 2)}),
                  ValidationError);
  CHECK_THROWS_AS(ParamClass::custom({make_rational(3, 2)}), ValidationError);
  CHECK_THROWS_AS(cls.theta0(), ValidationError);  /* no gap endpoints to report */
}

TEST_CASE("mesh spacing is the widest adjacent gap") {
  auto cls = ParamClass::custom({Rational(0), make_rational(1, 4), Rational(1)});
  CHECK(cls.mesh_spacing() == 0.75);
  CHECK(ParamClass::dense(2).mesh_spacing() == 0.5);
}

TEST_CASE("models mirror the atom list") {
  auto cls = ParamClass::dense(3);
  auto models = cls.bernoulli_models();
  REQUIRE(models.size() == cls.size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    auto* coin = dynamic_cast<const BernoulliModel*>(models[i].get());
    REQUIRE(coin != nullptr);
    CHECK(coin->theta() == cls.thetas()[i]);
  }
}

}  // TEST_SUITE
