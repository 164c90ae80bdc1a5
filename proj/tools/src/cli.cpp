// Copyright 2026 The sicrep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sicrep_cli/cli.hpp"

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sicrep/channels.hpp"
#include "sicrep/dynamics.hpp"
#include "sicrep/error.hpp"
#include "sicrep/io.hpp"
#include "sicrep/measures.hpp"
#include "sicrep/numerics.hpp"
#include "sicrep/repr.hpp"
#include "sicrep/sic.hpp"
#include "sicrep/tomography.hpp"

namespace sicrep::cli {

namespace {

using nlohmann::json;

struct Common {
    std::string sic = "builtin-qubit";
    std::uint64_t seed = 1;
    double tol = 1e-9;
    int restarts = 8;
    std::string out;
    std::string csv;
    bool table = false;
    bool parallel = false;
};

struct Outputs {
    std::ostream& out;
    std::ostream& err;
};

SicPovm load_sic(const std::string& spec) {
    if (spec == "builtin-qubit") return SicPovm::builtin_qubit();
    constexpr std::string_view prefix = "fiducial:";
    if (spec.rfind(prefix, 0) != 0) throw_input("--sic must be builtin-qubit or fiducial:PATH");
    const std::string text = io::read_file(spec.substr(prefix.size()));
    const json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw_input("SIC file is not valid JSON");
    if (j.is_object() && j.contains("projectors")) return io::sic_from_json(text);
    return SicPovm::from_fiducial(io::fiducial_from_json(text));
}

OptConfig opt_config(const Common& c) {
    OptConfig opt;
    opt.seed = c.seed;
    opt.restarts = c.restarts;
    opt.parallel = c.parallel;
    return opt;
}

OptConfig quant_config(const Common& c) {
    OptConfig opt = OptConfig::simplex_defaults();
    opt.seed = c.seed;
    opt.parallel = c.parallel;
    return opt;
}

json real_json(const RealMatrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(r, k));
        out.push_back(std::move(row));
    }
    return out;
}

json vector_json(const RealVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

void emit(const Common& c, Outputs& o, const std::string& text) {
    if (c.out.empty())
        o.out << text;
    else
        io::write_file(c.out, text);
}

void emit_json(const Common& c, Outputs& o, const json& j) { emit(c, o, j.dump(2) + "\n"); }

void emit_csv(const Common& c, const std::vector<std::pair<std::string, RealMatrix>>& blocks) {
    if (c.csv.empty()) return;
    std::string text;
    for (const auto& [name, m] : blocks) text += io::matrix_csv(name, m);
    io::write_file(c.csv, text);
}

void emit_table(const Common& c, Outputs& o, const std::vector<std::pair<std::string, RealMatrix>>& blocks,
                const std::vector<std::pair<std::string, double>>& scalars) {
    if (!c.table) return;
    for (const auto& [name, m] : blocks) o.out << name << "\n" << io::matrix_table(m) << "\n";
    for (const auto& [name, v] : scalars) o.out << name << " = " << std::fixed << std::setprecision(3) << v << "\n";
}

std::string infer_kind(const std::string& text) {
    std::string kind = io::detect_kind(text);
    if (!kind.empty()) return kind;
    const json j = json::parse(text, nullptr, false);
    if (!j.is_object()) throw_input("input must be a JSON object");
    if (j.contains("kraus")) return "channel";
    if (j.contains("amplitudes")) return "fiducial";
    if (j.contains("probs")) return "prob_vector";
    if (j.contains("hamiltonian")) return "gksl";
    if (j.contains("counts")) return "counts";
    if (j.contains("dim_in") && j.contains("matrix")) return "pseudostochastic";
    if (j.contains("h_part") || j.contains("d_part")) return "generator";
    if (j.contains("dim") && j.contains("matrix")) {
        const json& m = j["matrix"];
        if (m.is_array() && !m.empty() && m[0].is_array() && !m[0].empty()) {
            if (m[0][0].is_array() || m[0].size() == 2) return "density_matrix";
            return "generator";
        }
        return "density_matrix";
    }
    throw_input("cannot determine the input type; add a \"kind\" field");
}

int convert(const Common& c, Outputs& o, const std::string& input, const std::string& ptp,
            std::optional<double> time) {
    const SicPovm sic = load_sic(c.sic);
    if (!ptp.empty()) {
        const PseudoStochMatrix s = builtin_ptp(parse_ptp(ptp), sic);
        const CptpReport rep = is_cptp(s, sic, sic, c.tol);
        json j = json::parse(io::to_json(s));
        j["cptp"] = rep.cptp;
        j["choi_min_eigenvalue"] = rep.min_eigenvalue;
        emit_json(c, o, j);
        emit_csv(c, {{"S", s.matrix}});
        emit_table(c, o, {{"S", s.matrix}}, {{"choi_min_eigenvalue", rep.min_eigenvalue}});
        return kOk;
    }
    if (input.empty()) throw_input("convert needs an input file or --ptp");
    const std::string text = io::read_file(input);
    const std::string kind = infer_kind(text);
    if (kind == "density_matrix") {
        const DensityMatrix rho = io::density_from_json(text);
        rho.validate(c.tol, c.tol);
        const ProbVector p = state_to_prob(rho, sic);
        emit(c, o, io::to_json(p));
        emit_csv(c, {{"p", RealMatrix(p.probs.transpose())}});
        emit_table(c, o, {{"p", RealMatrix(p.probs.transpose())}}, {});
    } else if (kind == "prob_vector") {
        const ProbVector p = io::prob_from_json(text);
        p.validate();
        if (!qplex_membership(p, sic, c.tol)) throw_physicality("probability vector is outside the qplex");
        emit(c, o, io::to_json(prob_to_state(p, sic)));
    } else if (kind == "channel") {
        const PseudoStochMatrix s = kraus_to_pstoch(io::channel_from_json(text), sic, sic);
        emit(c, o, io::to_json(s));
        emit_csv(c, {{"S", s.matrix}});
        emit_table(c, o, {{"S", s.matrix}}, {});
    } else if (kind == "pseudostochastic") {
        const PseudoStochMatrix s = io::pstoch_from_json(text);
        s.validate(c.tol);
        const CptpReport rep = is_cptp(s, sic, sic, std::max(c.tol, 1e-9));
        if (!rep.cptp) {
            std::ostringstream os;
            os << "matrix is not CPTP (Choi minimum eigenvalue " << rep.min_eigenvalue << ", trace deviation "
               << rep.tp_deviation << ")";
            throw_physicality(os.str());
        }
        emit(c, o, io::to_json(choi_to_kraus(pstoch_to_choi(s, sic, sic), std::max(c.tol, 1e-9))));
    } else if (kind == "gksl") {
        const Generator g = lgen_from_gksl(io::gksl_from_json(text), sic);
        if (time) {
            const PseudoStochMatrix s = evolve(g, *time);
            emit(c, o, io::to_json(s));
            emit_csv(c, {{"S", s.matrix}});
            emit_table(c, o, {{"S", s.matrix}}, {});
        } else {
            emit(c, o, io::to_json(g));
            emit_csv(c, {{"L", g.matrix}, {"H", *g.h_part}, {"D", *g.d_part}});
            emit_table(c, o, {{"L", g.matrix}, {"H", *g.h_part}, {"D", *g.d_part}}, {});
        }
    } else if (kind == "generator") {
        if (!time) throw_input("converting a generator needs --time");
        const Generator g = io::generator_from_json(text);
        g.validate(std::max(c.tol, 1e-9));
        const PseudoStochMatrix s = evolve(g, *time);
        emit(c, o, io::to_json(s));
        emit_csv(c, {{"S", s.matrix}});
        emit_table(c, o, {{"S", s.matrix}}, {});
    } else if (kind == "fiducial") {
        emit(c, o, io::to_json(SicPovm::from_fiducial(io::fiducial_from_json(text))));
    } else {
        throw_input("convert does not handle inputs of kind '" + kind + "'");
    }
    return kOk;
}

int analyze(const Common& c, Outputs& o, const std::string& input) {
    const SicPovm sic = load_sic(c.sic);
    const std::string text = io::read_file(input);
    const std::string kind = infer_kind(text);
    const UnitaryGenBasis basis = basis_hunit(sic);
    if (kind == "generator") {
        const Generator g = io::generator_from_json(text);
        g.validate(std::max(c.tol, 1e-9));
        const DeltaQuantReport q = delta_quant(g.matrix, basis, quant_config(c));
        const MarkovianCheck m = is_time_independent_markovian(g, sic, 1e-6, opt_config(c));
        const RealMatrix h = project_unit(g.matrix, basis);
        json j = {{"kind", "generator_analysis"},
                  {"classical", classicality_check(g)},
                  {"negativity", negativity(g.matrix)},
                  {"h_part", real_json(h)},
                  {"delta_quant", q.value},
                  {"argmax_lambda", vector_json(q.lambda)},
                  {"restarts_agreeing", q.restarts_agreeing},
                  {"markovian", m.markovian},
                  {"markov_residual", m.residual}};
        emit_json(c, o, j);
        emit_csv(c, {{"L", g.matrix}, {"H", h}});
        emit_table(c, o, {{"L", g.matrix}, {"H", h}}, {{"delta_quant", q.value}, {"negativity", negativity(g.matrix)}});
        return kOk;
    }
    if (kind != "pseudostochastic") throw_input("analyze expects a pseudostochastic matrix or a generator");
    const PseudoStochMatrix s = io::pstoch_from_json(text);
    if (s.dim_in != sic.dim() || s.dim_out != sic.dim()) throw_input("analyze: matrix dimension does not match the SIC");
    const double colsum = (s.matrix.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (colsum > 0.1) throw_physicality("analyze: column sums are far from 1");
    if (colsum > 1e-6) o.err << "warning: column sums deviate from 1 by " << colsum << "\n";
    const MarkovReport m = markov_projection(s.matrix, sic, opt_config(c));
    const DeltaQuantReport q = delta_quant(RealMatrix(m.h_part + m.d_part), basis, quant_config(c));
    const CptpReport cp = is_cptp(s, sic, sic, std::max(c.tol, 1e-9));
    json j = {{"kind", "analysis"},
              {"log", real_json(m.log)},
              {"h_part", real_json(m.h_part)},
              {"d_part", real_json(m.d_part)},
              {"delta_quant", q.value},
              {"argmax_lambda", vector_json(q.lambda)},
              {"restarts_agreeing", q.restarts_agreeing},
              {"delta_nmark", m.delta_nmark},
              {"s_mark", real_json(m.s_mark.matrix)},
              {"markov_residual", m.log_residual},
              {"log_residual", m.log_residual},
              {"column_sum_deviation", colsum},
              {"cptp", cp.cptp},
              {"choi_min_eigenvalue", cp.min_eigenvalue}};
    emit_json(c, o, j);
    emit_csv(c, {{"S", s.matrix}, {"log", m.log}, {"H", m.h_part}, {"D", m.d_part}, {"S_mark", m.s_mark.matrix}});
    emit_table(c, o, {{"S", s.matrix}, {"H", m.h_part}, {"D", m.d_part}},
               {{"delta_quant", q.value}, {"delta_nmark", m.delta_nmark}});
    return kOk;
}

json reconstruction_json(const ReconstructionReport& r) {
    return {{"s_raw", real_json(r.s_raw)},
            {"s_cptp", real_json(r.s_cptp.matrix)},
            {"per_entry_error", r.per_entry_error},
            {"projection_distance", r.projection_distance},
            {"shots", r.shots}};
}

int tomo(const Common& c, Outputs& o, const std::string& main_path, const std::string& cal_path,
         const std::string& order) {
    const SicPovm sic = load_sic(c.sic);
    const CountsRecord main = io::counts_from_json(io::read_file(main_path));
    const CountsRecord cal = io::counts_from_json(io::read_file(cal_path));
    const PipelineReport r = run_pipeline(main, cal, sic, opt_config(c), parse_calibration_order(order));
    json j = {{"kind", "tomography_report"},
              {"seed", r.seed},
              {"sic", sic.label()},
              {"main", reconstruction_json(r.main)},
              {"calibration_record", reconstruction_json(r.reference)},
              {"calibration_order", to_string(r.calibration.order)},
              {"reference_condition", r.calibration.condition},
              {"s_dec", real_json(r.calibration.s_dec.matrix)},
              {"s_dec_u", real_json(r.calibration.s_dec_u.matrix)},
              {"s_u_raw", real_json(r.calibration.s_u_raw)},
              {"s_u", real_json(r.calibration.s_u.matrix)},
              {"h_u", real_json(r.markov_u.h_part)},
              {"d_u", real_json(r.markov_u.d_part)},
              {"h_dec", real_json(r.markov_dec.h_part)},
              {"d_dec", real_json(r.markov_dec.d_part)},
              {"delta_nmark_u", r.markov_u.delta_nmark},
              {"delta_nmark_dec", r.markov_dec.delta_nmark},
              {"delta_quant_u", r.quant_u.value},
              {"delta_quant_dec", r.quant_dec.value},
              {"argmax_lambda_u", vector_json(r.quant_u.lambda)},
              {"argmax_lambda_dec", vector_json(r.quant_dec.lambda)},
              {"per_entry_error", r.main.per_entry_error}};
    emit_json(c, o, j);
    const std::vector<std::pair<std::string, RealMatrix>> blocks{
        {"S_U", r.calibration.s_u.matrix}, {"S_dec", r.calibration.s_dec.matrix}, {"H_U", r.markov_u.h_part},
        {"D_U", r.markov_u.d_part},        {"H_dec", r.markov_dec.h_part},        {"D_dec", r.markov_dec.d_part}};
    emit_csv(c, blocks);
    emit_table(c, o, blocks,
               {{"delta_nMark(S_U)", r.markov_u.delta_nmark},
                {"delta_nMark(S_dec)", r.markov_dec.delta_nmark},
                {"delta_quant(H_U+D_U)", r.quant_u.value},
                {"delta_quant(H_dec+D_dec)", r.quant_dec.value},
                {"per_entry_error", r.main.per_entry_error}});
    return kOk;
}

int simulate(const Common& c, Outputs& o, const std::string& input, std::int64_t shots) {
    const SicPovm sic = load_sic(c.sic);
    const PseudoStochMatrix s = io::pstoch_from_json(io::read_file(input));
    s.validate(std::max(c.tol, 1e-6));
    emit(c, o, io::to_json(simulate_counts(s.matrix, sic, shots, c.seed)));
    return kOk;
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--sic", c.sic, "SIC source: builtin-qubit or fiducial:PATH")->capture_default_str();
    app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    app->add_option("--tol", c.tol, "Physicality tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--restarts", c.restarts, "Optimizer restarts")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--out", c.out, "Write JSON here instead of standard output");
    app->add_option("--csv", c.csv, "Also write the matrices as CSV");
    app->add_flag("--table", c.table, "Print a three-decimal table to standard output");
    app->add_flag("--parallel", c.parallel, "Run optimizer restarts on separate threads");
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Input: return kInputError;
        case ErrorKind::Physicality: return kPhysicalityError;
        case ErrorKind::Domain: return kDomainError;
        case ErrorKind::Optimizer: return kOptimizerError;
    }
    return kUnexpected;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Probability representation of qubit and qudit dynamics with SIC-POVMs"};
    app.name("sicrep");
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    Outputs o{out, err};

    auto* conv = app.add_subcommand("convert", "Convert states, channels and generators to the SIC picture");
    std::string conv_input, ptp;
    std::optional<double> time;
    conv->add_option("input", conv_input, "Input JSON file");
    conv->add_option("--ptp", ptp, "Emit a built-in positive map: transposition or reduction");
    conv->add_option("--time", time, "Evolve generators and GKSL specs to this time");
    add_common(conv, common);

    auto* an = app.add_subcommand("analyze", "Generator extraction, delta_quant and delta_nmark");
    std::string an_input;
    an->add_option("input", an_input, "Pseudostochastic matrix or generator JSON")->required();
    add_common(an, common);

    auto* tm = app.add_subcommand("tomo", "Reconstruct and analyze from SIC count records");
    std::string main_path, cal_path, order = "project-then-invert";
    tm->add_option("--main", main_path, "Counts with the target operation")->required();
    tm->add_option("--cal", cal_path, "Counts of the reference (calibration) run")->required();
    tm->add_option("--calibration-order", order, "project-then-invert or invert-then-project")->capture_default_str();
    add_common(tm, common);

    auto* sim = app.add_subcommand("simulate", "Draw multinomial counts for a pseudostochastic matrix");
    std::string sim_input;
    std::int64_t shots = 1024;
    sim->add_option("input", sim_input, "Pseudostochastic matrix JSON")->required();
    sim->add_option("--shots", shots, "Shots per input state")->capture_default_str()->check(CLI::PositiveNumber);
    add_common(sim, common);

    std::vector<std::string> argv_store{"sicrep"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*conv) return convert(common, o, conv_input, ptp, time);
        if (*an) return analyze(common, o, an_input);
        if (*tm) return tomo(common, o, main_path, cal_path, order);
        if (*sim) return simulate(common, o, sim_input, shots);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const nlohmann::json::exception& e) {
        err << "error (input): " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUnexpected;
    }
    return kInputError;
}

}  // namespace sicrep::cli
