#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "rankone/scalar.hpp"

using namespace rankone;

namespace {
Scalar rand_scalar(Field f, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0.0, 1.0);
    Scalar z = Scalar::zero(f);
    for (int c = 0; c < field_dim(f); ++c) z.set_comp(c, N(rng));
    return z;
}
}  // namespace

TEST_CASE("quaternion defining relations") {
    Field H = Field::Quaternion;
    Scalar i = Scalar::unit(1, H), j = Scalar::unit(2, H), k = Scalar::unit(3, H);
    CHECK(max_comp_abs(i * j - k) == 0.0);
    CHECK(max_comp_abs(j * k - i) == 0.0);
    CHECK(max_comp_abs(k * i - j) == 0.0);
    CHECK(max_comp_abs(j * i + k) == 0.0);
    CHECK(max_comp_abs(i * i + Scalar::one(H)) == 0.0);
}

TEST_CASE("identity and components") {
    std::mt19937_64 rng(7);
    for (Field f : {Field::Real, Field::Complex, Field::Quaternion}) {
        Scalar z = rand_scalar(f, rng);
        CHECK(max_comp_abs(z * Scalar::one(f) - z) == 0.0);
        CHECK(max_comp_abs(Scalar::one(f) * z - z) == 0.0);
        // re + im recovers z exactly, componentwise
        Scalar back = Scalar(re(z), f) + im(z);
        CHECK(max_comp_abs(back - z) == 0.0);
    }
    Scalar i = Scalar::unit(1, Field::Quaternion);
    CHECK(re(i) == 0.0);
    CHECK(max_comp_abs(im(i) - i) == 0.0);
    CHECK(max_comp_abs(conj(Scalar::one(Field::Real)) - Scalar::one(Field::Real)) == 0.0);
}

TEST_CASE("modulus is multiplicative") {
    std::mt19937_64 rng(11);
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
        Scalar z = rand_scalar(Field::Quaternion, rng), w = rand_scalar(Field::Quaternion, rng);
        worst = std::max(worst, std::abs(abs(z * w) - abs(z) * abs(w)) / (abs(z) * abs(w)));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("conjugation is an anti-homomorphism and an involution") {
    std::mt19937_64 rng(13);
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
        Scalar z = rand_scalar(Field::Quaternion, rng), w = rand_scalar(Field::Quaternion, rng);
        worst = std::max(worst, max_comp_abs(conj(z * w) - conj(w) * conj(z)));
        CHECK(max_comp_abs(conj(conj(z)) - z) == 0.0);
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("abs squared equals conj(z) z") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 200; ++t) {
        Scalar z = rand_scalar(Field::Quaternion, rng);
        Scalar zz = conj(z) * z;
        CHECK(std::abs(zz.s - abs2(z)) <= 1e-14 * abs2(z));
        CHECK(max_comp_abs(im(zz)) <= 1e-14 * abs2(z));
    }
}

TEST_CASE("field mismatch is a usage error") {
    Scalar a = Scalar::one(Field::Real), b = Scalar::one(Field::Complex);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
}

TEST_CASE("components outside the field are forced to zero") {
    Scalar z(1.0, 2.0, 3.0, 4.0, Field::Complex);
    CHECK(z.u == 0.0);
    CHECK(z.v == 0.0);
    Scalar r(1.0, 2.0, 3.0, 4.0, Field::Real);
    CHECK(r.t == 0.0);
    CHECK(max_comp_abs(im(r)) == 0.0);
}

TEST_CASE("inverse") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        Scalar z = rand_scalar(Field::Quaternion, rng);
        CHECK(max_comp_abs(z * inv(z) - Scalar::one(Field::Quaternion)) < 1e-14);
        CHECK(max_comp_abs(inv(z) * z - Scalar::one(Field::Quaternion)) < 1e-14);
    }
    CHECK_THROWS_AS(inv(Scalar::zero(Field::Real)), std::domain_error);
}
