#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "asymbell/bounds.hpp"
#include "asymbell/solve.hpp"

namespace asymbell::io {

using json = nlohmann::json;

// Functional schema: {"N", "Nprime", "K", "coeffs"} with coeffs x-major,
// then y, then a. Games add "A", "B" and a question distribution "pi".
json functional_to_json(const BellFunctional& m);
BellFunctional functional_from_json(const json& j);
json game_to_json(const Game& g);
Game game_from_json(const json& j);

// Strategies: matrices row-major, complex entries as [re, im]. Only
// single-component (pure-state) strategies are serialized.
json strategy_to_json(const QuantumStrategy& s);
QuantumStrategy strategy_from_json(const json& j);

json deterministic_to_json(const DeterministicStrategy& s);
json check_to_json(const bounds::CheckOutcome& c);
json estimate_to_json(const solve::EstimateReport& r);

// Parses with ParseError naming the byte offset on malformed input.
json parse_json(const std::string& text);

std::string canonical_dump(const json& j);  // sorted keys, trailing newline

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

void atomic_write(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

struct ScanRow {
    int l = 0;
    int n = 0;
    double eta = 0.0;
    double beta_star_lb = 0.0;
    double beta_classical = 0.0;
    double ratio = 0.0;
    std::string classical_method;
};

// Header + one line per row; all numbers in shortest round-trip form so the
// file is byte-stable for a fixed seed.
std::string scan_rows_to_csv(const std::vector<ScanRow>& rows);
std::vector<ScanRow> scan_rows_from_csv(const std::string& text);

}  // namespace asymbell::io
