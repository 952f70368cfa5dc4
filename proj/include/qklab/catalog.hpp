#pragma once

#include <functional>
#include <optional>
#include <string>

#include "qklab/equation.hpp"
#include "qklab/majorant.hpp"

namespace qklab {

/// A named equation instance with optional closed-form solution. The catalog
/// is the oracle supply for the whole verification suite: every instance
/// carrying a closed form self-validates (the closed form must satisfy the
/// equation to 1e-9 on a test grid).
struct CatalogEntry {
    std::string name;
    std::string description;
    EquationSpec equation;
    double nu = 0.0;                      // ray start radius
    std::vector<Complex> initial;         // f^(0)..f^(k-1) at nu e^{i theta}
    // closed_form(z, j) = f^(j)(z); only for entries with known solutions
    std::function<Complex(Complex, int)> closed_form;
    std::optional<MajorantProblem> majorant;  // comparison pairing, when defined
    double bloch_coefficient_bound = 0.0;     // exact M for the Bloch bound, when known
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_catalog_entry(const std::string& name);
std::vector<std::string> catalog_names();

/// Residual of each closed form in its equation over a radial/angular test
/// grid; throws DomainError when any exceeds 1e-9.
void self_validate_catalog();

}  // namespace qklab
