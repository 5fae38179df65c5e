#pragma once

#include "hermform/catalog.hpp"
#include "hermform/hodge.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hermform::testing {

constexpr std::uint64_t kSeed = 0x5eed2024;

inline Scalar random_scalar(std::mt19937_64& rng, long bound = 3, bool complex = true)
{
    std::uniform_int_distribution<long> d(-bound, bound);
    std::uniform_int_distribution<long> den(1, 3);
    return Scalar(mpq_class(d(rng), den(rng)), complex ? mpq_class(d(rng), den(rng)) : mpq_class(0));
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density = 0.5)
{
    std::bernoulli_distribution keep(density);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (keep(rng))
                m(r, c) = random_scalar(rng);
    return m;
}

/// Low-rank matrix as a product of two random factors.
inline Matrix random_low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t inner)
{
    return random_matrix(rng, rows, inner, 0.8) * random_matrix(rng, inner, cols, 0.8);
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n)
{
    Vector v(n);
    for (auto& x : v)
        x = random_scalar(rng);
    return v;
}

inline Form random_form(std::mt19937_64& rng, const Hodge& h, Bidegree b)
{
    return h.form(b, random_vector(rng, h.dim(b)));
}

/// Every catalog model with a fixed parameter choice, small enough for
/// exhaustive checks.
inline std::vector<std::string> small_catalog_ids()
{
    std::vector<std::string> ids = nakamura_ids();
    for (const char* id : {"iwasawa", "example1:invariant", "torus:n=1", "torus:n=2", "torus:n=3", "ce:u=0,v=0",
                           "ce:u=0,v=1", "ce:u=1,v=1", "ce:u=1,v=2", "ce:u=2,v=2"})
        ids.emplace_back(id);
    return ids;
}

inline Parameters default_params(const std::string& id)
{
    if (id == "nakamura:V.17")
        return {{"alpha", Scalar(1)}, {"beta", Scalar(1)}};
    return {};
}

inline Model catalog_model(const std::string& id)
{
    return load_model(id, default_params(id));
}

inline bool is_nakamura(const std::string& id)
{
    return id.rfind("nakamura:", 0) == 0;
}

} // namespace hermform::testing
