#pragma once

#include "fewcoef/lmodel/coefficients.hpp"
#include "fewcoef/lmodel/test_function.hpp"
#include "fewcoef/numerics/precision.hpp"
#include "fewcoef/optimize/design.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace fewcoef::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Everything a run depends on. Rationals are kept exact so that cache keys
/// and headers are reproducible.
struct RunConfig {
    /// Builtin label or path of a functional-equation file.
    std::string instance = "zeta";
    mpq_class s_re = mpq_class(1, 2), s_im = 0;
    int digits = 30;
    std::vector<mpq_class> betas;
    mpq_class gauss_c = 0;
    mpq_class center = 0;
    /// 0 picks the instance default.
    long cutoff = 0;
    long symbol_cut = 1000;
    /// Primes at or below this have known data; -1 picks the instance default.
    long known_through = -1;
    /// Unset: per index for LS; for LP per symbol when values are known.
    std::optional<optimize::Grouping> grouping;
    std::vector<lmodel::Symbol> free;
    std::vector<lmodel::Symbol> symbols;
    /// Indices whose δ_n the eval report lists.
    std::vector<long> show = {1, 2, 3, 4, 5};
    std::string hecke_table;
    std::string coeff_file;
    std::string cache_dir;
    std::string out;
    bool curve = false;

    /// Throws InputError with the offending flag named.
    void validate() const;
    PrecisionContext context() const { return PrecisionContext::for_digits(digits); }
    /// Test functions exp(-iβs + c(s - i t0)²), one per β (g = 1 when no β is given).
    std::vector<lmodel::TestFunction> test_functions(mp::Bits bits) const;
    /// "# key: value" lines.
    std::string header(const std::string& command) const;
};

/// "3", "-2/5", "0.75", "1e-3".
mpq_class parse_rational(const std::string& text);
/// "1/2+10i", "0.5-3i", "2", "7i".
std::pair<mpq_class, mpq_class> parse_complex(const std::string& text);
/// "a:step:b" inclusive, exact; empty when b < a.
std::vector<mpq_class> parse_range(const std::string& text);
/// Comma-separated rationals.
std::vector<mpq_class> parse_list(const std::string& text);
std::vector<long> parse_index_list(const std::string& text);
optimize::Grouping parse_grouping(const std::string& text);
const char* grouping_name(optimize::Grouping g);
/// Shortest exact text: "3", "-2/5".
std::string rational_text(const mpq_class& q);

}  // namespace fewcoef::cli
