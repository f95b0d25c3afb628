#pragma once

#include "fewcoef/cli/config.hpp"
#include "fewcoef/lmodel/instance.hpp"

#include <string>
#include <vector>

namespace fewcoef::cli {

struct BuiltInstance {
    lmodel::LFunctionInstance inst;
    /// Distinguishes tables built from the same label (known range, data file).
    std::string fingerprint;
    /// Remarks shown in report headers, e.g. that only the known pattern is available.
    std::vector<std::string> notes;
};

/// Builtin labels accepted by --instance.
std::vector<std::string> builtin_labels();

/// Builds the configured instance at `bits`. Anything that is not a builtin
/// label is read as a functional-equation file; --coeffs then supplies
/// `n value` rows of known coefficients and every other b_n is unknown.
BuiltInstance build_instance(const RunConfig& cfg, mp::Bits bits);

/// Marks b_n unknown (its own symbol) whenever n has a prime factor above `known_through`.
lmodel::CoefficientTable restrict_known(const lmodel::CoefficientTable& t, long known_through);

/// Default path of the bundled Hecke eigenvalue table.
std::string default_hecke_table();

}  // namespace fewcoef::cli
