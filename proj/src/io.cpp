#include "asymbell/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "asymbell/numeric.hpp"

namespace asymbell::io {

json functional_to_json(const BellFunctional& m) {
    const BellFunctional dense = m.densified();
    json j;
    j["N"] = dense.alice_inputs();
    j["Nprime"] = dense.bob_inputs();
    j["K"] = dense.alice_outputs();
    j["coeffs"] = dense.dense();
    if (!dense.tag().empty()) j["tag"] = dense.tag();
    return j;
}

BellFunctional functional_from_json(const json& j) {
    try {
        return BellFunctional::from_dense(j.at("N").get<int>(), j.at("Nprime").get<int>(),
                                          j.at("K").get<int>(),
                                          j.at("coeffs").get<std::vector<double>>(),
                                          j.value("tag", std::string{}));
    } catch (const json::exception& e) {
        throw ParseError(std::string("functional JSON: ") + e.what());
    }
}

json game_to_json(const Game& g) {
    const Game dense = g.densified();
    json j;
    j["N"] = dense.x_count();
    j["Nprime"] = dense.y_count();
    j["A"] = dense.a_count();
    j["B"] = dense.b_count();
    std::vector<double> pi, win;
    pi.reserve(static_cast<std::size_t>(dense.x_count()) * dense.y_count());
    win.reserve(pi.capacity() * static_cast<std::size_t>(dense.a_count()) * dense.b_count());
    for (int x = 0; x < dense.x_count(); ++x)
        for (int y = 0; y < dense.y_count(); ++y) {
            pi.push_back(dense.question_prob(x, y));
            for (int a = 0; a < dense.a_count(); ++a)
                for (int b = 0; b < dense.b_count(); ++b) win.push_back(dense.win_coeff(x, y, a, b));
        }
    j["pi"] = pi;
    j["coeffs"] = win;
    if (!dense.tag().empty()) j["tag"] = dense.tag();
    return j;
}

Game game_from_json(const json& j) {
    try {
        return Game::from_dense(j.at("N").get<int>(), j.at("Nprime").get<int>(),
                                j.at("A").get<int>(), j.at("B").get<int>(),
                                j.at("pi").get<std::vector<double>>(),
                                j.at("coeffs").get<std::vector<double>>(),
                                j.value("tag", std::string{}));
    } catch (const json::exception& e) {
        throw ParseError(std::string("game JSON: ") + e.what());
    }
}

namespace {

json matrix_to_json(const MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            rows.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

MatrixXcd matrix_from_json(const json& j) {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const auto& entries = j.at("entries");
    if (static_cast<Eigen::Index>(entries.size()) != rows * cols)
        throw ParseError("matrix JSON: entry count mismatch");
    MatrixXcd m(rows, cols);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index jj = 0; jj < cols; ++jj) {
            const auto& e = entries[static_cast<std::size_t>(idx++)];
            m(i, jj) = std::complex<double>(e.at(0).get<double>(), e.at(1).get<double>());
        }
    return m;
}

}  // namespace

json strategy_to_json(const QuantumStrategy& s) {
    if (s.components().size() != 1)
        throw UsageError("strategy_to_json: only pure-state strategies are serialized");
    json j;
    j["dimA"] = s.dim_alice();
    j["dimB"] = s.dim_bob();
    const auto& psi = s.components()[0].second;
    json state = json::array();
    for (int i = 0; i < s.dim_alice(); ++i)
        for (int k = 0; k < s.dim_bob(); ++k)
            state.push_back(json::array({psi(i, k).real(), psi(i, k).imag()}));
    j["state"] = state;
    json alice = json::array();
    for (const auto& povm : s.alice_povms()) {
        json elements = json::array();
        for (const auto& e : povm) elements.push_back(matrix_to_json(e));
        alice.push_back(elements);
    }
    j["alice_povms"] = alice;
    if (s.bob_side() == QuantumStrategy::BobSide::Observables) {
        j["bob_mode"] = "observables";
        json obs = json::array();
        for (const auto& b : s.bob_observables()) obs.push_back(matrix_to_json(b));
        j["bob_observables"] = obs;
    } else {
        j["bob_mode"] = "povms";
        json bob = json::array();
        for (const auto& povm : s.bob_povms()) {
            json elements = json::array();
            for (const auto& e : povm) elements.push_back(matrix_to_json(e));
            bob.push_back(elements);
        }
        j["bob_povms"] = bob;
    }
    return j;
}

QuantumStrategy strategy_from_json(const json& j) {
    try {
        const int dim_alice = j.at("dimA").get<int>();
        const int dim_bob = j.at("dimB").get<int>();
        const auto& state_json = j.at("state");
        VectorXcd state(static_cast<Eigen::Index>(dim_alice) * dim_bob);
        if (static_cast<Eigen::Index>(state_json.size()) != state.size())
            throw ParseError("strategy JSON: state dimension mismatch");
        for (Eigen::Index i = 0; i < state.size(); ++i) {
            const auto& e = state_json[static_cast<std::size_t>(i)];
            state(i) = std::complex<double>(e.at(0).get<double>(), e.at(1).get<double>());
        }
        std::vector<std::vector<MatrixXcd>> alice;
        for (const auto& povm_json : j.at("alice_povms")) {
            std::vector<MatrixXcd> povm;
            for (const auto& e : povm_json) povm.push_back(matrix_from_json(e));
            alice.push_back(std::move(povm));
        }
        const std::string mode = j.at("bob_mode").get<std::string>();
        if (mode == "observables") {
            std::vector<MatrixXcd> obs;
            for (const auto& e : j.at("bob_observables")) obs.push_back(matrix_from_json(e));
            return QuantumStrategy::with_observables(dim_alice, dim_bob, state, std::move(alice),
                                                     std::move(obs));
        }
        if (mode == "povms") {
            std::vector<std::vector<MatrixXcd>> bob;
            for (const auto& povm_json : j.at("bob_povms")) {
                std::vector<MatrixXcd> povm;
                for (const auto& e : povm_json) povm.push_back(matrix_from_json(e));
                bob.push_back(std::move(povm));
            }
            return QuantumStrategy::with_povms(dim_alice, dim_bob, state, std::move(alice),
                                               std::move(bob));
        }
        throw ParseError("strategy JSON: unknown bob_mode '" + mode + "'");
    } catch (const json::exception& e) {
        throw ParseError(std::string("strategy JSON: ") + e.what());
    }
}

json deterministic_to_json(const DeterministicStrategy& s) {
    json j;
    j["alice"] = s.alice;
    j["bob"] = s.bob;
    j["bob_mode"] = s.bob_mode == BobMode::Sign ? "sign" : "label";
    return j;
}

json check_to_json(const bounds::CheckOutcome& c) {
    json j;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["slack"] = c.slack;
    j["passed"] = c.passed;
    j["context"] = c.context;
    return j;
}

json estimate_to_json(const solve::EstimateReport& r) {
    json j;
    j["estimate"] = r.estimate;
    j["std_error"] = r.std_error;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    return j;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot open " + tmp + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw ParseError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ParseError("rename " + tmp + " -> " + path + " failed: " + std::strerror(errno));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string scan_rows_to_csv(const std::vector<ScanRow>& rows) {
    std::string out = "l,n,eta,beta_star_lb,beta_classical,ratio,classical_method\n";
    for (const auto& r : rows) {
        out += std::to_string(r.l) + "," + std::to_string(r.n) + "," + format_double(r.eta) + "," +
               format_double(r.beta_star_lb) + "," + format_double(r.beta_classical) + "," +
               format_double(r.ratio) + "," + r.classical_method + "\n";
    }
    return out;
}

std::vector<ScanRow> scan_rows_from_csv(const std::string& text) {
    std::vector<ScanRow> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            offset += line.size() + 1;
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i)
            if (i == line.size() || line[i] == ',') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        if (fields.size() != 7)
            throw ParseError("scan CSV: expected 7 fields at byte " + std::to_string(offset));
        try {
            ScanRow r;
            r.l = std::stoi(fields[0]);
            r.n = std::stoi(fields[1]);
            r.eta = std::stod(fields[2]);
            r.beta_star_lb = std::stod(fields[3]);
            r.beta_classical = std::stod(fields[4]);
            r.ratio = std::stod(fields[5]);
            r.classical_method = fields[6];
            rows.push_back(std::move(r));
        } catch (const std::exception&) {
            throw ParseError("scan CSV: malformed number at byte " + std::to_string(offset));
        }
        offset += line.size() + 1;
    }
    return rows;
}

}  // namespace asymbell::io
