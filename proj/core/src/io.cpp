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

#include "sicrep/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "sicrep/error.hpp"

namespace sicrep::io {

using nlohmann::json;

namespace {

json parse(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw_input(std::string("malformed JSON: ") + e.what());
    }
}

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw_input("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) throw_input(std::string("missing field '") + key + "'");
    return *it;
}

double number(const json& j, const char* what) {
    if (!j.is_number()) throw_input(std::string(what) + ": expected a number");
    return j.get<double>();
}

int positive_int(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 1) throw_input(std::string(what) + ": expected a positive integer");
    return j.get<int>();
}

cplx complex_entry(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw_input("complex entry must be a number or a [re, im] pair");
}

bool is_pair(const json& j) { return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(); }

ComplexMatrix complex_matrix(const json& j, int rows, int cols) {
    if (!j.is_array()) throw_input("matrix must be an array");
    ComplexMatrix m(rows, cols);
    const auto total = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    const bool nested = j.size() == static_cast<std::size_t>(rows) && rows > 0 && j[0].is_array() &&
                        (j.size() != total || !is_pair(j[0]));
    if (nested) {
        for (int r = 0; r < rows; ++r) {
            const json& row = j[static_cast<std::size_t>(r)];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(cols)) throw_input("matrix row has wrong length");
            for (int c = 0; c < cols; ++c) m(r, c) = complex_entry(row[static_cast<std::size_t>(c)]);
        }
        return m;
    }
    if (j.size() != total) {
        std::ostringstream os;
        os << "matrix must have " << total << " entries, got " << j.size();
        throw_input(os.str());
    }
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = complex_entry(j[static_cast<std::size_t>(r * cols + c)]);
    return m;
}

json complex_json(const ComplexMatrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back({m(r, c).real(), m(r, c).imag()});
    return out;
}

json complex_vector_json(const ComplexVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
    return out;
}

RealMatrix real_matrix(const json& j, int rows, int cols) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(rows)) {
        std::ostringstream os;
        os << "real matrix must have " << rows << " rows";
        throw_input(os.str());
    }
    RealMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(cols)) throw_input("real matrix row has wrong length");
        for (int c = 0; c < cols; ++c) m(r, c) = number(row[static_cast<std::size_t>(c)], "matrix entry");
    }
    return m;
}

json real_json(const RealMatrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

json real_vector_json(const RealVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_input("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_input("cannot write '" + path + "'");
    out << text;
    if (!out) throw_input("write to '" + path + "' failed");
}

Fiducial fiducial_from_json(std::string_view text) {
    const json j = parse(text);
    Fiducial f;
    f.dim = positive_int(field(j, "dim"), "dim");
    const json& amps = field(j, "amplitudes");
    if (!amps.is_array() || amps.size() != static_cast<std::size_t>(f.dim)) throw_input("amplitudes must have d entries");
    f.amplitudes.resize(f.dim);
    for (int i = 0; i < f.dim; ++i) f.amplitudes(i) = complex_entry(amps[static_cast<std::size_t>(i)]);
    return f;
}

std::string to_json(const Fiducial& f) {
    return dump({{"kind", "fiducial"}, {"dim", f.dim}, {"amplitudes", complex_vector_json(f.amplitudes)}});
}

SicPovm sic_from_json(std::string_view text, double tol) {
    const json j = parse(text);
    const int d = positive_int(field(j, "dim"), "dim");
    const json& list = field(j, "projectors");
    if (!list.is_array() || list.size() != static_cast<std::size_t>(d) * d) throw_input("projectors must have d^2 entries");
    std::vector<ComplexMatrix> projectors;
    for (const auto& p : list) projectors.push_back(complex_matrix(p, d, d));
    return SicPovm::from_projectors(d, std::move(projectors), tol);
}

std::string to_json(const SicPovm& sic) {
    json list = json::array();
    for (const auto& p : sic.projectors()) list.push_back(complex_json(p));
    return dump({{"kind", "sic"}, {"dim", sic.dim()}, {"label", sic.label()}, {"projectors", list}});
}

ProbVector prob_from_json(std::string_view text) {
    const json j = parse(text);
    ProbVector p;
    p.dim = positive_int(field(j, "dim"), "dim");
    const json& probs = field(j, "probs");
    if (!probs.is_array() || probs.size() != static_cast<std::size_t>(p.dim) * p.dim) throw_input("probs must have d^2 entries");
    p.probs.resize(static_cast<Eigen::Index>(probs.size()));
    for (std::size_t i = 0; i < probs.size(); ++i) p.probs(static_cast<Eigen::Index>(i)) = number(probs[i], "probs");
    return p;
}

std::string to_json(const ProbVector& p) {
    return dump({{"kind", "prob_vector"}, {"dim", p.dim}, {"probs", real_vector_json(p.probs)}});
}

DensityMatrix density_from_json(std::string_view text) {
    const json j = parse(text);
    DensityMatrix rho;
    rho.dim = positive_int(field(j, "dim"), "dim");
    rho.matrix = complex_matrix(field(j, "matrix"), rho.dim, rho.dim);
    return rho;
}

std::string to_json(const DensityMatrix& rho) {
    return dump({{"kind", "density_matrix"}, {"dim", rho.dim}, {"matrix", complex_json(rho.matrix)}});
}

KrausChannel channel_from_json(std::string_view text) {
    const json j = parse(text);
    KrausChannel ch;
    ch.dim_in = positive_int(field(j, "dim_in"), "dim_in");
    ch.dim_out = positive_int(field(j, "dim_out"), "dim_out");
    const json& list = field(j, "kraus");
    if (!list.is_array() || list.empty()) throw_input("kraus must be a non-empty array");
    for (const auto& a : list) ch.kraus.push_back(complex_matrix(a, ch.dim_out, ch.dim_in));
    return ch;
}

std::string to_json(const KrausChannel& ch) {
    json list = json::array();
    for (const auto& a : ch.kraus) list.push_back(complex_json(a));
    return dump({{"kind", "channel"}, {"dim_in", ch.dim_in}, {"dim_out", ch.dim_out}, {"kraus", list}});
}

PseudoStochMatrix pstoch_from_json(std::string_view text) {
    const json j = parse(text);
    PseudoStochMatrix s;
    s.dim_in = positive_int(field(j, "dim_in"), "dim_in");
    s.dim_out = positive_int(field(j, "dim_out"), "dim_out");
    s.matrix = real_matrix(field(j, "matrix"), s.dim_out * s.dim_out, s.dim_in * s.dim_in);
    return s;
}

std::string to_json(const PseudoStochMatrix& s) {
    return dump({{"kind", "pseudostochastic"}, {"dim_in", s.dim_in}, {"dim_out", s.dim_out}, {"matrix", real_json(s.matrix)}});
}

GkslSpec gksl_from_json(std::string_view text) {
    const json j = parse(text);
    GkslSpec spec;
    spec.dim = positive_int(field(j, "dim"), "dim");
    spec.hamiltonian = complex_matrix(field(j, "hamiltonian"), spec.dim, spec.dim);
    if (j.contains("noise_ops")) {
        const json& list = j["noise_ops"];
        if (!list.is_array()) throw_input("noise_ops must be an array");
        for (const auto& v : list) spec.noise_ops.push_back(complex_matrix(v, spec.dim, spec.dim));
    }
    return spec;
}

std::string to_json(const GkslSpec& spec) {
    json list = json::array();
    for (const auto& v : spec.noise_ops) list.push_back(complex_json(v));
    return dump({{"kind", "gksl"}, {"dim", spec.dim}, {"hamiltonian", complex_json(spec.hamiltonian)}, {"noise_ops", list}});
}

Generator generator_from_json(std::string_view text) {
    const json j = parse(text);
    Generator g;
    g.dim = positive_int(field(j, "dim"), "dim");
    const int n = g.dim * g.dim;
    g.matrix = real_matrix(field(j, "matrix"), n, n);
    if (j.contains("h_part")) g.h_part = real_matrix(j["h_part"], n, n);
    if (j.contains("d_part")) g.d_part = real_matrix(j["d_part"], n, n);
    return g;
}

std::string to_json(const Generator& g) {
    json j = {{"kind", "generator"}, {"dim", g.dim}, {"matrix", real_json(g.matrix)}};
    if (g.h_part) j["h_part"] = real_json(*g.h_part);
    if (g.d_part) j["d_part"] = real_json(*g.d_part);
    return dump(j);
}

CountsRecord counts_from_json(std::string_view text) {
    const json j = parse(text);
    CountsRecord c;
    c.dim = positive_int(field(j, "dim"), "dim");
    const json& shots = field(j, "shots");
    if (!shots.is_number_integer()) throw_input("shots must be an integer");
    c.shots = shots.get<std::int64_t>();
    const int n = c.dim * c.dim;
    const json& table = field(j, "counts");
    if (!table.is_array() || table.size() != static_cast<std::size_t>(n)) throw_input("counts must have d^2 rows");
    c.counts.resize(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = table[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) throw_input("counts row must have d^2 entries");
        for (int k = 0; k < n; ++k) {
            const json& e = row[static_cast<std::size_t>(k)];
            if (!e.is_number_integer()) throw_input("counts entries must be integers");
            c.counts(i, k) = e.get<std::int64_t>();
        }
    }
    return c;
}

std::string to_json(const CountsRecord& c) {
    json table = json::array();
    for (Eigen::Index i = 0; i < c.counts.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < c.counts.cols(); ++k) row.push_back(c.counts(i, k));
        table.push_back(std::move(row));
    }
    return dump({{"kind", "counts"}, {"dim", c.dim}, {"shots", c.shots}, {"counts", table}});
}

std::string to_json(const DeltaQuantReport& r) {
    return dump({{"delta_quant", r.value},
                 {"argmax_lambda", real_vector_json(r.lambda)},
                 {"restarts_agreeing", r.restarts_agreeing},
                 {"restarts", r.restarts}});
}

std::string to_json(const MarkovReport& r) {
    return dump({{"delta_nmark", r.delta_nmark}, {"s_mark", real_json(r.s_mark.matrix)}, {"log_residual", r.log_residual}});
}

std::string detect_kind(std::string_view text) {
    const json j = parse(text);
    if (j.is_object() && j.contains("kind") && j["kind"].is_string()) return j["kind"].get<std::string>();
    return {};
}

std::string matrix_csv(std::string_view name, const RealMatrix& m) {
    std::ostringstream os;
    os << "# " << name << "\n" << std::setprecision(17);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m(r, c);
        os << "\n";
    }
    return os.str();
}

std::string matrix_table(const RealMatrix& m) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? " " : "") << std::setw(7) << (std::abs(m(r, c)) < 5e-4 ? 0.0 : m(r, c));
        os << "\n";
    }
    return os.str();
}

}  // namespace sicrep::io
