#pragma once

#include "fewcoef/afe/evaluate.hpp"

#include <iosfwd>
#include <string>

namespace fewcoef::afe {

/// Lossless text form of an Evaluation (reals in exact hexadecimal).
void write_evaluation(std::ostream& os, const Evaluation& e);
/// Throws InputError on malformed input.
Evaluation read_evaluation(std::istream& is);

/// Human-readable summary: known part, largest δ by symbol, L1 error, tail diagnostics.
std::string describe_evaluation(const Evaluation& e, const lmodel::CoefficientTable& table, int digits,
                                int top = 10);

}  // namespace fewcoef::afe
