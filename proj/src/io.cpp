#include "smf/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace smf {

namespace {

using nlohmann::json;

std::string quoted(const std::string& s) { return json(s).dump(); }

std::string modulus_line(const std::optional<PrimeModulus>& p) {
  return p ? "  \"modulus\": " + std::to_string(p->value()) + ",\n" : std::string{};
}

template <typename Row>
void write_rows(std::ostringstream& out, const std::vector<Row>& rows) {
  out << "  \"rows\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) out << (i == 0 ? "\n    " : ",\n    ") << rows[i];
  out << (rows.empty() ? "]\n" : "\n  ]\n");
}

long get_long(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) throw FormatError(std::string("missing or non-integer field '") + key + "'");
  return j.at(key).get<long>();
}

std::string get_string(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) throw FormatError(std::string("missing or non-string field '") + key + "'");
  return j.at(key).get<std::string>();
}

Rational parse_value(const json& v) {
  if (!v.is_string()) throw FormatError("coefficient values must be strings");
  const std::string s = v.get<std::string>();
  Rational x;
  try {
    x = parse_rational(s);
  } catch (const std::exception&) {
    throw FormatError("bad rational '" + s + "'");
  }
  if (to_string(x) != s) throw FormatError("rational '" + s + "' is not in lowest terms");
  return x;
}

}  // namespace

std::string to_json_text(const SiegelExpansion& f) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"format\": " << quoted(kExpansionFormat) << ",\n";
  out << "  \"genus\": 2,\n";
  out << "  \"weight\": " << f.weight() << ",\n";
  out << "  \"level\": " << quoted(f.level()) << ",\n";
  out << "  \"box\": " << f.box() << ",\n";
  out << modulus_line(f.modulus());
  out << "  \"d_power\": " << f.d_power() << ",\n";
  out << "  \"note\": " << quoted(f.note()) << ",\n";
  std::vector<std::string> rows;
  for (const auto& t : f.layout().indices()) {
    const Rational& c = f.coeff(t);
    if (sgn(c) == 0) continue;
    rows.push_back("[" + std::to_string(t.m) + ", " + std::to_string(t.n) + ", " + std::to_string(t.r) + ", " + quoted(to_string(c)) + "]");
  }
  write_rows(out, rows);
  out << "}\n";
  return out.str();
}

SiegelExpansion parse_expansion(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("expansion file must be a JSON object");
  if (get_string(j, "format") != kExpansionFormat) throw FormatError("unsupported format '" + get_string(j, "format") + "'");
  if (get_long(j, "genus") != 2) throw FormatError("only genus 2 is supported");
  const long box = get_long(j, "box");
  if (box < 0) throw FormatError("box must be >= 0");
  std::optional<PrimeModulus> p;
  if (j.contains("modulus")) {
    try {
      p = PrimeModulus(static_cast<std::uint64_t>(get_long(j, "modulus")));
    } catch (const DomainError& e) {
      throw FormatError(std::string("bad modulus: ") + e.what());
    }
  }
  SiegelExpansion f(static_cast<int>(get_long(j, "weight")), get_string(j, "level"), static_cast<int>(box), p, get_string(j, "note"));
  const long dp = get_long(j, "d_power");
  if (dp < 0) throw FormatError("d_power must be >= 0");
  f = f.with_d_power(static_cast<int>(dp));
  if (!j.contains("rows") || !j.at("rows").is_array()) throw FormatError("missing rows");
  std::optional<SiegelIndex> prev;
  for (const auto& row : j.at("rows")) {
    if (!row.is_array() || row.size() != 4 || !row[0].is_number_integer() || !row[1].is_number_integer() || !row[2].is_number_integer()) {
      throw FormatError("each row must be [m, n, r, \"value\"]");
    }
    const long m = row[0].get<long>(), n = row[1].get<long>(), r = row[2].get<long>();
    if (n < 0 || m < 0 || n > box || m > box || 4 * n * m - r * r < 0) throw FormatError("row index out of the box: " + to_string(SiegelIndex{n, r, m}));
    const auto key = std::make_tuple(m, n, r);
    if (prev && !(std::make_tuple(prev->m, prev->n, prev->r) < key)) throw FormatError("rows are not strictly sorted by (m, n, r)");
    prev = SiegelIndex{n, r, m};
    const Rational v = parse_value(row[3]);
    if (sgn(v) == 0) throw FormatError("zero rows are not allowed");
    if (p && (v.get_den() != 1 || sgn(v) < 0 || v.get_num() >= p->value())) throw FormatError("residues must be integers in [0, p)");
    f.set(n, r, m, v);
  }
  return f;
}

std::string to_csv_text(const SiegelExpansion& f) {
  std::ostringstream out;
  out << "m,n,r,value\n";
  for (const auto& t : f.layout().indices()) {
    const Rational& c = f.coeff(t);
    if (sgn(c) == 0) continue;
    out << t.m << ',' << t.n << ',' << t.r << ',' << to_string(c) << '\n';
  }
  return out.str();
}

std::string to_json_text(const WittPair& w) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"format\": " << quoted(kWittFormat) << ",\n";
  out << "  \"box\": " << w.box() << ",\n";
  out << modulus_line(w.modulus());
  std::vector<std::string> rows;
  for (long n = 0; n <= w.box(); ++n) {
    for (long m = 0; m <= w.box(); ++m) {
      const Rational& c = w.at(n, m);
      if (sgn(c) != 0) rows.push_back("[" + std::to_string(n) + ", " + std::to_string(m) + ", " + quoted(to_string(c)) + "]");
    }
  }
  write_rows(out, rows);
  out << "}\n";
  return out.str();
}

std::string to_json_text(const JacobiSlice& phi, const std::optional<PrimeModulus>& p) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"format\": " << quoted(kSliceFormat) << ",\n";
  out << "  \"weight\": " << phi.weight() << ",\n";
  out << "  \"index\": " << phi.index() << ",\n";
  out << "  \"q_bound\": " << phi.q_bound() << ",\n";
  out << "  \"weak\": " << (phi.weak() ? "true" : "false") << ",\n";
  out << modulus_line(p);
  std::vector<std::string> rows;
  for (const auto& [key, c] : phi.coeffs()) {
    if (sgn(c) == 0) continue;
    rows.push_back("[" + std::to_string(key.first) + ", " + std::to_string(key.second) + ", " + quoted(to_string(c)) + "]");
  }
  write_rows(out, rows);
  out << "}\n";
  return out.str();
}

json to_json(const CongruenceReport& rep) {
  json w = json::array();
  for (const auto& x : rep.witnesses) w.push_back({{"n", x.index.n}, {"r", x.index.r}, {"m", x.index.m}, {"residue", x.residue}});
  return {{"verdict", to_string(rep.verdict)}, {"bound", to_string(rep.bound)}, {"scan_limit", rep.scan_limit}, {"box", rep.box},
          {"prime", rep.prime},           {"index", rep.index},               {"witnesses", w},              {"notes", rep.notes}};
}

json to_json(const MembershipResult& res, std::uint64_t prime) {
  json basis = json::array();
  for (const auto& mono : res.basis) basis.push_back(to_string(mono));
  return {{"consistent", res.consistent}, {"prime", prime},   {"basis", basis}, {"combination", res.combination}, {"residual_violations", res.residual_violations},
          {"equations", res.equations},   {"rank", res.rank}};
}

json to_json(const FiltrationReport& rep) {
  json cands = json::array();
  for (const auto& c : rep.candidates) {
    cands.push_back({{"weight", c.weight}, {"consistent", c.consistent}, {"residual_violations", c.residual_violations}, {"basis_size", c.basis_size}});
  }
  json out = {{"weight_class", rep.weight_class}, {"prime", rep.prime},           {"candidates", cands},    {"evidence_box", rep.evidence_box},
              {"zero_form", rep.zero_form},       {"conclusion", rep.conclusion}, {"notes", rep.notes}};
  out["omega"] = rep.omega ? json(*rep.omega) : json(nullptr);
  return out;
}

json to_json(const Theorem2Report& rep) {
  json out = {{"form", rep.form},
              {"k", rep.k},
              {"prime", rep.prime},
              {"box", rep.box},
              {"branch", rep.branch},
              {"form_nonzero", rep.form_nonzero},
              {"up_nonzero", rep.up_nonzero},
              {"prediction_matches", rep.prediction_matches},
              {"notes", rep.notes}};
  out["up_witness"] = rep.up_witness ? json{{"n", rep.up_witness->index.n}, {"r", rep.up_witness->index.r}, {"m", rep.up_witness->index.m},
                                            {"residue", rep.up_witness->residue}}
                                     : json(nullptr);
  if (rep.branch == "dichotomy") {
    out["d_iterations"] = rep.d_iterations;
    out["formal_weight"] = rep.formal_weight;
    out["predicted_omega"] = rep.predicted_omega ? json(*rep.predicted_omega) : json(nullptr);
    out["filtration"] = rep.filtration ? to_json(*rep.filtration) : json(nullptr);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::random_device rd;
  const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed for '" + path + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move into place '" + path + "'");
  }
}

}  // namespace smf
