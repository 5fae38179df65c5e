#pragma once

#include "hermform/catalog.hpp"
#include "hermform/hodge.hpp"

#include <optional>
#include <random>
#include <string>

namespace hermform {

struct MasseyVerdict {
    Form f_ab;
    Form f_bc;
    Form representative;
    Bidegree bidegree;
    Vector aeppli_coordinates;  // in the Aeppli harmonic basis of `bidegree`
    Form aeppli_harmonic;       // harmonic projection of the representative
    Subspace indeterminacy;     // inside the same coordinate space
    bool nonzero = false;
};

/// Minimum-norm f of bidegree target - (1,1) with del dbar f = target.
/// Throws MasseyUndefined when target is not del dbar-exact.
Form solve_potential(const Hodge& h, const Form& target, Bidegree target_bidegree);

/// Triple ABC-Massey product of three Bott-Chern harmonic forms, using
/// minimum-norm potentials.
MasseyVerdict triple_abc_massey(const Hodge& h, const Form& a, const Form& b, const Form& c);

/// Same, with caller-supplied potentials (checked to solve their equations).
MasseyVerdict triple_abc_massey(const Hodge& h, const Form& a, const Form& b, const Form& c, const Form& f_ab,
                                const Form& f_bc);

/// Random del dbar-closed form of bidegree b with small Gaussian-integer
/// coefficients; adding it to a potential keeps it a potential.
Form random_potential_shift(const Hodge& h, Bidegree b, std::mt19937_64& rng);

/// Counts the trials, out of `trials`, whose verdict with randomly shifted
/// potentials differs from the minimum-norm verdict, either in the nonzero
/// flag or by a class difference outside the indeterminacy.
int perturbation_disagreements(const Hodge& h, const Form& a, const Form& b, const Form& c, int trials,
                               std::mt19937_64& rng);

struct AppendixReport {
    AppendixCase listed;
    bool verified = false;
    bool nonzero = false;
    /// Projection is a nonzero multiple of the listed representative.
    bool matches_listed = false;
    std::optional<Scalar> ratio;
    MasseyVerdict verdict;
    std::string message;
};

AppendixReport verify_appendix_case(const AppendixCase& c);

} // namespace hermform
