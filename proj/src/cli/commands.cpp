#include "fewcoef/cli/commands.hpp"

#include "fewcoef/afe/report.hpp"
#include "fewcoef/cli/cache.hpp"
#include "fewcoef/forms/forms.hpp"
#include "fewcoef/numerics/errors.hpp"
#include "fewcoef/optimize/least_squares.hpp"
#include "fewcoef/optimize/linear_program.hpp"
#include "fewcoef/satake/satake.hpp"

#include <cstdio>
#include <ostream>

namespace fewcoef::cli {

using mp::Complex;
using mp::Real;

namespace {

mp::Bits table_bits(const RunConfig& cfg) { return cfg.context().working_bits + 64; }

Complex point(const RunConfig& cfg, mp::Bits bits) {
    mp::ScopedBits g(bits);
    return Complex(Real(cfg.s_re), Real(cfg.s_im));
}

void write_header(const RunConfig& cfg, const BuiltInstance& b, const std::string& command, std::ostream& os) {
    os << cfg.header(command);
    const auto& t = b.inst.coeffs;
    os << "# degree: " << b.inst.fe.degree << "  table cutoff: " << t.cutoff()
       << "  unknown symbols: " << t.symbols().size() << "  values: " << (t.values_available() ? "known" : "pattern only")
       << '\n';
    for (const auto& n : b.notes) os << "# note: " << n << '\n';
}

std::vector<mpq_class> beta_list(const RunConfig& cfg) {
    return cfg.betas.empty() ? std::vector<mpq_class>{mpq_class(0)} : cfg.betas;
}

void write_tail_line(const mpq_class& beta, const afe::Evaluation& e, std::ostream& os) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "# tail beta=%s: slope %.6f fit [%ld, %ld] predicted/actual %.3f%s bound %s\n", rational_text(beta).c_str(), e.tail.slope,
                  e.tail.fit_from, e.tail.fit_to, e.tail.actual_last > 0 ? e.tail.predicted_last / e.tail.actual_last : 0.0,
                  e.tail.decaying ? "" : " not decaying", e.tail_bound.str(3).c_str());
    os << buf;
}

optimize::LsOptions ls_options(const RunConfig& cfg) {
    optimize::LsOptions o;
    if (cfg.grouping) o.grouping = *cfg.grouping;
    o.symbol_cut = cfg.symbol_cut;
    o.free.insert(cfg.free.begin(), cfg.free.end());
    return o;
}

optimize::LpOptions lp_options(const RunConfig& cfg) {
    optimize::LpOptions o;
    o.grouping = cfg.grouping;
    o.symbol_cut = cfg.symbol_cut;
    return o;
}

struct Prepared {
    BuiltInstance built;
    std::vector<afe::Evaluation> evals;
};

Prepared prepare(const RunConfig& cfg) {
    cfg.validate();
    Prepared p{build_instance(cfg, table_bits(cfg)), {}};
    p.evals = run_evaluations(cfg, p.built);
    return p;
}

}  // namespace

std::string log10_text(const Real& x) {
    if (!x.is_finite()) return "nan";
    if (x.is_zero()) return "-inf";
    mp::ScopedBits g(64);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", mp::log10(mp::abs(Real(x).round_to(64))).to_double());
    return buf;
}

std::string evaluation_key(const RunConfig& cfg, const BuiltInstance& b, const mpq_class& beta) {
    return "v2;" + b.inst.label + ";" + b.fingerprint + ";s=" + rational_text(cfg.s_re) + "," + rational_text(cfg.s_im) +
           ";beta=" + rational_text(beta) + ";c=" + rational_text(cfg.gauss_c) + ";t0=" + rational_text(cfg.center) +
           ";digits=" + std::to_string(cfg.digits);
}

std::vector<afe::Evaluation> run_evaluations(const RunConfig& cfg, const BuiltInstance& b) {
    const auto ctx = cfg.context();
    EvalCache cache(cfg.cache_dir);
    auto betas = beta_list(cfg);
    auto gs = cfg.test_functions(ctx.working_bits);
    std::vector<std::optional<afe::Evaluation>> slot(betas.size());
    std::vector<lmodel::TestFunction> missing;
    std::vector<size_t> where;
    for (size_t j = 0; j < betas.size(); ++j) {
        slot[j] = cache.load(b.inst.label, evaluation_key(cfg, b, betas[j]));
        if (!slot[j]) {
            missing.push_back(gs[j]);
            where.push_back(j);
        }
    }
    if (!missing.empty()) {
        mp::ScopedBits g(ctx.working_bits);
        auto fresh = afe::evaluate_batch(b.inst, point(cfg, ctx.working_bits), missing, ctx);
        for (size_t k = 0; k < fresh.size(); ++k) {
            cache.store(b.inst.label, evaluation_key(cfg, b, betas[where[k]]), fresh[k]);
            slot[where[k]] = std::move(fresh[k]);
        }
    }
    std::vector<afe::Evaluation> out;
    for (auto& e : slot) out.push_back(std::move(*e));
    return out;
}

void cmd_eval(const RunConfig& cfg, std::ostream& os) {
    auto p = prepare(cfg);
    write_header(cfg, p.built, "eval", os);
    const auto& table = p.built.inst.coeffs;
    for (const auto& e : p.evals) {
        mp::ScopedBits g(e.bits);
        os << '\n' << afe::describe_evaluation(e, table, cfg.digits);
        os << "coefficients of b_n:\n";
        for (long n : cfg.show) {
            if (n > e.cutoff) continue;
            os << "  n=" << n << "  " << e.delta[n].str(10) << '\n';
        }
        Real err = afe::error_l1_index(e, table);
        if (e.values_available)
            os << "Z = " << e.known_part.str(cfg.digits) << " +- " << err.str(4) << " (rounding " << e.rounding_bound.str(3)
               << ")\n";
        else
            os << "Z unavailable (pattern table); L1 error of the unknown terms " << err.str(4) << '\n';
    }
}

void cmd_scan(const RunConfig& cfg, std::ostream& os) {
    cfg.validate();
    auto built = build_instance(cfg, table_bits(cfg));
    write_header(cfg, built, "scan", os);
    if (cfg.betas.empty()) {
        os << "beta,log10_abs_value,log10_error\n";
        return;
    }
    auto evals = run_evaluations(cfg, built);
    for (size_t j = 0; j < evals.size(); ++j) write_tail_line(cfg.betas[j], evals[j], os);
    os << "beta,log10_abs_value,log10_error\n";
    for (size_t j = 0; j < evals.size(); ++j) {
        const auto& e = evals[j];
        mp::ScopedBits g(e.bits);
        Real err = afe::error_l1_index(e, built.inst.coeffs) + e.rounding_bound;
        os << rational_text(cfg.betas[j]) << ',' << (e.values_available ? log10_text(e.known_part) : "nan") << ','
           << log10_text(err) << '\n';
    }
}

void cmd_ls(const RunConfig& cfg, std::ostream& os) {
    auto p = prepare(cfg);
    write_header(cfg, p.built, "ls", os);
    for (size_t j = 0; j < p.evals.size(); ++j) write_tail_line(beta_list(cfg)[j], p.evals[j], os);
    const auto& table = p.built.inst.coeffs;
    auto opt = ls_options(cfg);
    if (cfg.curve) {
        os << "k,log10_error\n";
        for (size_t k = 1; k <= p.evals.size(); ++k) {
            std::vector<afe::Evaluation> head(p.evals.begin(), p.evals.begin() + static_cast<long>(k));
            auto w = optimize::ls_weights(head, table, opt);
            auto c = optimize::combine(head, w, table, opt);
            os << k << ',' << log10_text(c.l1_error + c.rounding) << '\n';
        }
        return;
    }
    auto w = optimize::ls_weights(p.evals, table, opt);
    auto c = optimize::combine(p.evals, w, table, opt);
    mp::ScopedBits g(c.value.bits());
    auto betas = beta_list(cfg);
    os << "weights (beta, c):\n";
    for (size_t j = 0; j < w.c.size(); ++j) os << "  " << rational_text(betas[j]) << "  " << w.c[j].str(cfg.digits) << '\n';
    if (p.built.inst.coeffs.values_available())
        os << "value      " << c.value.str(cfg.digits) << '\n';
    else
        os << "value      unavailable (pattern table)\n";
    for (const auto& [q, m] : c.multipliers) os << "b_" << q << " multiplier " << m.str(cfg.digits) << '\n';
    os << "L1 error   " << c.l1_error.str(4) << '\n';
    os << "rounding   " << c.rounding.str(3) << '\n';
    os << "objective  " << w.objective.str(6) << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", w.log10_condition);
    os << "log10 cond " << buf << '\n';
}

void cmd_lp(const RunConfig& cfg, std::ostream& os) {
    auto p = prepare(cfg);
    write_header(cfg, p.built, "lp", os);
    for (size_t j = 0; j < p.evals.size(); ++j) write_tail_line(beta_list(cfg)[j], p.evals[j], os);
    const auto& table = p.built.inst.coeffs;
    auto lopt = lp_options(cfg);
    auto sopt = ls_options(cfg);
    auto ls_error = [&](const std::vector<afe::Evaluation>& ev) {
        auto w = optimize::ls_weights(ev, table, sopt);
        auto c = optimize::combine(ev, w, table, sopt);
        return Real(c.l1_error + c.rounding);
    };
    if (cfg.curve) {
        os << "k,log10_ls_error,log10_lp_halfwidth,ratio\n";
        for (size_t k = 1; k <= p.evals.size(); ++k) {
            std::vector<afe::Evaluation> head(p.evals.begin(), p.evals.begin() + static_cast<long>(k));
            Real le = ls_error(head);
            auto r = optimize::lp_bounds(head, table, std::nullopt, lopt);
            mp::ScopedBits g(r.max.bits());
            Real hw = (r.max - r.min) / 2L;
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6f", (hw / le).to_double());
            os << k << ',' << log10_text(le) << ',' << log10_text(hw) << ',' << buf << '\n';
        }
        return;
    }
    auto r = optimize::lp_bounds(p.evals, table, std::nullopt, lopt);
    Real le = ls_error(p.evals);
    mp::ScopedBits g(r.max.bits());
    Real hw = (r.max - r.min) / 2L;
    os << "min        " << r.min.str(cfg.digits) << '\n';
    os << "max        " << r.max.str(cfg.digits) << '\n';
    os << "midpoint   " << ((r.min + r.max) / 2L).str(cfg.digits) << '\n';
    os << "halfwidth  " << hw.str(4) << '\n';
    os << "LS error   " << le.str(4) << '\n';
    os << "ratio      " << (hw / le).str(4) << '\n';
    os << "variables  " << r.variables << "  pivots " << r.pivots << '\n';
}

void cmd_recover(const RunConfig& cfg, std::ostream& os) {
    if (cfg.symbols.empty()) throw InputError("recover needs --symbols");
    auto p = prepare(cfg);
    write_header(cfg, p.built, "recover", os);
    for (size_t j = 0; j < p.evals.size(); ++j) write_tail_line(beta_list(cfg)[j], p.evals[j], os);
    auto rec = optimize::recover_coefficients(p.evals, p.built.inst.coeffs, cfg.symbols, lp_options(cfg));
    for (const auto& [q, r] : rec) {
        mp::ScopedBits g(r.midpoint.bits());
        os << "b_" << q << "  " << r.midpoint.str(cfg.digits) << " +- " << r.halfwidth.str(4) << '\n';
    }
}

void cmd_satake(const RunConfig& cfg, std::ostream& os) {
    cfg.validate();
    const auto ctx = cfg.context();
    mp::ScopedBits g(ctx.working_bits);
    std::string path = cfg.hecke_table.empty() ? default_hecke_table() : cfg.hecke_table;
    os << "# fewcoef " << kVersion << " satake\n# table: " << path << "\n# digits: " << cfg.digits << '\n';
    const int d = std::min(cfg.digits, 20);
    for (const auto& h : satake::read_hecke_table(path, 20)) {
        auto t = satake::solve_satake(h, ctx);
        os << "p=" << h.p << (t.unitary ? "" : "  (not unitary)") << '\n';
        const Complex* a[3] = {&t.alpha0, &t.alpha1, &t.alpha2};
        for (int j = 0; j < 3; ++j)
            os << "  alpha" << j << "  " << a[j]->re.str(d) << (a[j]->im.sign() < 0 ? " - " : " + ")
               << mp::abs(a[j]->im).str(d) << "i\n";
        auto [lp, lp2] = satake::reconstruct_eigenvalues(t, h.p, h.k, ctx);
        Real resid = mp::abs(lp - Complex(Real(h.lambda_p))) / mp::abs(Real(h.lambda_p)) +
                     mp::abs(lp2 - Complex(Real(h.lambda_p2))) / mp::abs(Real(h.lambda_p2));
        os << "  round-trip relative residual " << resid.str(3) << '\n';
        for (auto rho : {lmodel::Rho::spin, lmodel::Rho::stan, lmodel::Rho::adj}) {
            os << "  Q_p(X) " << lmodel::rho_name(rho) << ':';
            for (const auto& c : satake::local_factor(t, rho, ctx)) os << ' ' << c.str(d);
            os << '\n';
        }
    }
}

void cmd_forms(const RunConfig& cfg, std::ostream& os) {
    cfg.validate();
    long N = cfg.cutoff ? cfg.cutoff : 30;
    const auto ctx = cfg.context();
    mp::ScopedBits g(ctx.working_bits);
    os << "# fewcoef " << kVersion << " forms\n# cutoff: " << N << '\n';
    auto d = forms::delta_expansion(N);
    os << "n,tau\n";
    for (long n = 1; n <= N; ++n) os << n << ',' << d[n].get_str() << '\n';
    auto ef = forms::hecke_eigenforms_s24(std::max(N, 2L));
    os << "# S24 T2 matrix on (q + O(q^3), q^2 + O(q^3)): [" << ef.t2_matrix[0][0].get_str() << ' '
       << ef.t2_matrix[0][1].get_str() << "; " << ef.t2_matrix[1][0].get_str() << ' ' << ef.t2_matrix[1][1].get_str()
       << "]\n";
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, 23);
    Real root2 = mp::sqrt(Real(scale));
    for (int i = 0; i < 2; ++i) {
        const auto& l = ef.lambda2[i];
        os << "# f" << (i + 1) << ": a_2 = " << l.x.get_str() << (l.y < 0 ? " - " : " + ") << mpq_class(abs(l.y)).get_str() << " sqrt("
           << l.d.get_str() << ") = " << l.value(ctx.working_bits).str(cfg.digits)
           << "  b_2 = " << (l.value(ctx.working_bits) / root2).str(cfg.digits) << '\n';
    }
}

}  // namespace fewcoef::cli
