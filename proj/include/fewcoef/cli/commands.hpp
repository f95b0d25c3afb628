#pragma once

#include "fewcoef/afe/evaluate.hpp"
#include "fewcoef/cli/builtins.hpp"
#include "fewcoef/cli/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fewcoef::cli {

/// Cache key of one evaluation: instance, fingerprint, s, g and digits.
std::string evaluation_key(const RunConfig& cfg, const BuiltInstance& b, const mpq_class& beta);

/// One evaluation per configured β (a single g with β = 0 when none is given),
/// read from the cache when present; the rest share one batch.
std::vector<afe::Evaluation> run_evaluations(const RunConfig& cfg, const BuiltInstance& b);

/// log10 |x| with 6 decimals; "-inf" for zero and "nan" when unavailable.
std::string log10_text(const mp::Real& x);

// Each command validates the config, writes its header, then its body.
void cmd_eval(const RunConfig& cfg, std::ostream& os);
/// CSV: beta,log10_abs_value,log10_error (value is nan for pattern tables).
void cmd_scan(const RunConfig& cfg, std::ostream& os);
/// Weights, value and error; with curve, CSV k,log10_error over the first k evaluations.
void cmd_ls(const RunConfig& cfg, std::ostream& os);
/// Value interval; with curve, CSV k,log10_ls_error,log10_lp_halfwidth,ratio.
void cmd_lp(const RunConfig& cfg, std::ostream& os);
/// Interval for each of cfg.symbols.
void cmd_recover(const RunConfig& cfg, std::ostream& os);
/// Satake triples, local factors and round-trip residuals from a Hecke table.
void cmd_satake(const RunConfig& cfg, std::ostream& os);
/// τ(n) and the S24 eigenform data.
void cmd_forms(const RunConfig& cfg, std::ostream& os);

}  // namespace fewcoef::cli
