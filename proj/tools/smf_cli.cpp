// smf: command-line front end for genus-2 expansions and congruence checks.
//
// Exit codes: 0 certified / consistent, 1 refuted / mismatch, 2 bad input or
// violated hypothesis, 3 unwritable output path, 4 inconclusive at this box,
// 5 internal integrity failure.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smf/cache.hpp"
#include "smf/congruence.hpp"
#include "smf/constructors.hpp"
#include "smf/io.hpp"
#include "smf/siegel.hpp"

namespace {

using nlohmann::json;
using namespace smf;

enum Exit { kOk = 0, kRefuted = 1, kHypothesis = 2, kUnwritable = 3, kInconclusive = 4, kIntegrity = 5 };

/// Errors from reading inputs are input errors, not output errors.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SiegelExpansion load(const std::string& path) {
  try {
    return parse_expansion(read_file(path));
  } catch (const IoError& e) {
    throw InputError(e.what());
  } catch (const FormatError& e) {
    throw InputError("'" + path + "': " + e.what());
  }
}

void emit(const std::optional<std::string>& out, const std::string& content) {
  if (out) {
    write_file_atomic(*out, content);
  } else {
    std::cout << content;
  }
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::CertifiedZero: return kOk;
    case Verdict::Refuted: return kRefuted;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kIntegrity;
}

/// Reduces an exact expansion, or checks that a reduced one uses the requested prime.
SiegelExpansion as_reduced(const SiegelExpansion& f, std::optional<std::uint64_t> prime) {
  if (f.modulus()) {
    if (prime && *prime != f.modulus()->value()) {
      throw DomainError("input is reduced mod " + std::to_string(f.modulus()->value()) + ", not mod " + std::to_string(*prime));
    }
    return f;
  }
  if (!prime) throw DomainError("--prime is required for an exact input");
  return reduce(f, PrimeModulus(*prime));
}

std::string generate_text(const std::string& name, int box, std::optional<std::uint64_t> mod, bool use_cache, bool& hit) {
  const auto compute = [&] {
    SiegelExpansion f = catalog_form(name, box);
    if (mod) f = reduce(f, PrimeModulus(*mod));
    return to_json_text(f);
  };
  hit = false;
  if (!use_cache) return compute();
  ExpansionCache cache = ExpansionCache::from_env();
  const CacheKey key{name, box, mod};
  if (auto content = cache.lookup(key)) {
    hit = true;
    return *content;
  }
  std::string content = compute();
  try {
    cache.store(key, content);
  } catch (const IoError& e) {
    std::cerr << "warning: cache not updated: " << e.what() << "\n";
  }
  return content;
}

struct Comparison {
  std::size_t checked = 0;
  std::vector<Witness> mismatches;
};

/// Compares two reduced expansions on the indices selected by `keep`.
template <typename Keep>
Comparison compare_mod(const SiegelExpansion& a, const SiegelExpansion& b, Keep keep) {
  Comparison c;
  const int box = std::min(a.box(), b.box());
  for (const auto& t : IndexLayout(box).indices()) {
    if (!keep(t)) continue;
    ++c.checked;
    if (a.coeff(t) != b.coeff(t)) {
      const Rational diff = a.coeff(t) - b.coeff(t);
      const std::uint64_t p = a.modulus()->value();
      mpz_class r = diff.get_num() % static_cast<unsigned long>(p);
      if (r < 0) r += static_cast<unsigned long>(p);
      c.mismatches.push_back({t, r.get_ui()});
    }
  }
  return c;
}

json comparison_json(const Comparison& c) {
  json mm = json::array();
  for (std::size_t i = 0; i < c.mismatches.size() && i < 64; ++i) {
    const auto& w = c.mismatches[i];
    mm.push_back({{"n", w.index.n}, {"r", w.index.r}, {"m", w.index.m}, {"difference", w.residue}});
  }
  return {{"indices_checked", c.checked}, {"mismatches", c.mismatches.size()}, {"first_mismatches", mm}};
}

/// F ≡ sign * target (mod p) on the trace region and the whole box, plus the level-1 surrogate gate.
int level_example(const std::string& label, const SiegelExpansion& f, const SiegelExpansion& target, std::uint64_t prime, long trace_limit,
                  const std::string& target_label) {
  const PrimeModulus p(prime);
  const SiegelExpansion fr = reduce(f, p), tr = reduce(target, p);
  const Comparison trace_cmp = compare_mod(fr, tr, [&](const SiegelIndex& t) { return t.trace() <= trace_limit; });
  const Comparison box_cmp = compare_mod(fr, tr, [](const SiegelIndex&) { return true; });
  // Region completeness: tr = 2n + 2m <= L needs every n + m <= L / 2.
  const long need_box = trace_limit / 2;
  const bool region_complete = f.box() >= need_box;
  const SiegelExpansion surrogate = f.relabeled(target.weight(), "1");
  const CongruenceReport gate = certify_congruent(surrogate, target, p, target.weight(), 1);

  json rep;
  rep["example"] = label;
  rep["prime"] = prime;
  rep["box"] = f.box();
  rep["target"] = target_label;
  rep["trace_region"] = comparison_json(trace_cmp);
  rep["trace_region"]["trace_limit"] = trace_limit;
  rep["trace_region"]["complete"] = region_complete;
  rep["box_region"] = comparison_json(box_cmp);
  rep["level_one_surrogate_gate"] = to_json(gate);
  std::vector<std::string> notes;
  notes.push_back("traces use tr T = 2n + 2m");
  if (region_complete && trace_cmp.mismatches.empty()) {
    notes.push_back("tr <= " + std::to_string(trace_limit) + " region fully checked");
  } else if (!region_complete) {
    notes.push_back("tr <= " + std::to_string(trace_limit) + " region not complete at this box (need box " + std::to_string(need_box) + ")");
  }
  notes.push_back("the surrogate gate treats the level-N form mod p as a level-1 weight-" + std::to_string(target.weight()) +
                  " expansion; that identification is assumed, not checked here");
  notes.push_back("no certificate is issued for the level-N form itself");
  rep["notes"] = notes;
  const bool ok = trace_cmp.mismatches.empty() && box_cmp.mismatches.empty();
  rep["congruent_on_box"] = ok;
  print(rep);
  if (!ok) return kRefuted;
  return region_complete ? kOk : kInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genus-2 Siegel modular form expansions and congruences mod p"};
  app.require_subcommand(1);
  int code = kOk;

  // generate
  std::string gen_name, gen_format = "json";
  int gen_box = 0;
  std::optional<std::uint64_t> gen_mod;
  std::optional<std::string> gen_out;
  bool gen_no_cache = false;
  auto* generate = app.add_subcommand("generate", "Write a catalog form's expansion");
  generate->add_option("name", gen_name, "E4, E6, chi10, chi12, chi20, G<k>, F2_11, F2_19, theta:S<i>^<N>")->required();
  generate->add_option("--box", gen_box, "Box B: all n, m <= B")->required()->check(CLI::PositiveNumber);
  generate->add_option("--mod", gen_mod, "Reduce mod this prime");
  generate->add_option("--out", gen_out, "Output path (stdout when absent)");
  generate->add_option("--format", gen_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  generate->add_flag("--no-cache", gen_no_cache, "Bypass the expansion cache");

  // catalog
  auto* catalog = app.add_subcommand("catalog", "List catalog names");

  // op
  std::string op_name;
  std::vector<std::string> op_inputs;
  std::optional<std::uint64_t> op_prime;
  long op_m = 0;
  int op_times = 1;
  std::optional<std::string> op_out;
  auto* op = app.add_subcommand("op", "Apply an operator: witt, up, dop, slice, mul, add, reduce");
  op->add_option("operator", op_name)->required()->check(CLI::IsMember({"witt", "up", "dop", "slice", "mul", "add", "reduce"}));
  op->add_option("inputs", op_inputs, "Input expansion files")->required();
  op->add_option("--prime", op_prime, "Prime for up / reduce");
  op->add_option("--m", op_m, "Slice index for slice");
  op->add_option("--times", op_times, "Iterations for dop")->check(CLI::NonNegativeNumber);
  op->add_option("--out", op_out, "Output path (stdout when absent)");

  // sturm
  std::string st_file;
  std::optional<int> st_weight;
  std::optional<std::uint64_t> st_prime;
  long st_index = 1;
  auto* sturm = app.add_subcommand("sturm", "Sturm gate on one expansion");
  sturm->add_option("file", st_file)->required();
  sturm->add_option("--weight", st_weight, "Weight k (default: header weight)");
  sturm->add_option("--prime", st_prime);
  sturm->add_option("--index", st_index, "Subgroup index")->check(CLI::PositiveNumber);

  // congruence
  std::string cg_f, cg_g;
  std::optional<int> cg_weight;
  std::uint64_t cg_prime = 0;
  long cg_index = 1;
  auto* congruence = app.add_subcommand("congruence", "Sturm gate on F - G");
  congruence->add_option("F", cg_f)->required();
  congruence->add_option("G", cg_g)->required();
  congruence->add_option("--weight", cg_weight);
  congruence->add_option("--prime", cg_prime)->required();
  congruence->add_option("--index", cg_index)->check(CLI::PositiveNumber);

  // membership
  std::string mb_file;
  int mb_weight = 0, mb_box = 0;
  std::optional<std::uint64_t> mb_prime;
  auto* membership = app.add_subcommand("membership", "Solve F = sum of weight-j monomials mod p on a box");
  membership->add_option("file", mb_file)->required();
  membership->add_option("--weight", mb_weight)->required();
  membership->add_option("--prime", mb_prime);
  membership->add_option("--box", mb_box)->required();

  // filtration
  std::string fl_file;
  std::optional<int> fl_weight;
  std::optional<std::uint64_t> fl_prime;
  int fl_cap = 0, fl_box = 0;
  auto* filtration = app.add_subcommand("filtration", "Filtration evidence over a weight class");
  filtration->add_option("file", fl_file)->required();
  filtration->add_option("--weight", fl_weight, "Formal weight (default: header weight + 2 d_power)");
  filtration->add_option("--prime", fl_prime);
  filtration->add_option("--cap", fl_cap)->required();
  filtration->add_option("--box", fl_box)->required();

  // theorem2
  std::string t2_name;
  int t2_weight = 0, t2_box = 0;
  std::uint64_t t2_prime = 0;
  std::optional<std::string> t2_branch;
  auto* theorem2 = app.add_subcommand("theorem2", "U(p) nonvanishing / filtration dichotomy driver");
  theorem2->add_option("name", t2_name)->required();
  theorem2->add_option("--weight", t2_weight)->required();
  theorem2->add_option("--prime", t2_prime)->required();
  theorem2->add_option("--box", t2_box)->required()->check(CLI::PositiveNumber);
  theorem2->add_option("--branch", t2_branch, "Expected regime: nonvanishing or dichotomy");

  // examples
  std::string ex_which;
  int ex_k = 20;
  std::uint64_t ex_prime = 7;
  std::optional<int> ex_box;
  auto* examples = app.add_subcommand("examples", "Worked examples: sharpness, level11, level19");
  examples->add_option("which", ex_which)->required()->check(CLI::IsMember({"sharpness", "level11", "level19"}));
  examples->add_option("--k", ex_k, "Weight for sharpness");
  examples->add_option("--prime", ex_prime, "Prime for sharpness");
  examples->add_option("--box", ex_box);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kHypothesis;
  }

  try {
    if (*generate) {
      if (!is_catalog_name(gen_name)) throw DomainError("unknown form '" + gen_name + "'");
      bool hit = false;
      const std::string text = generate_text(gen_name, gen_box, gen_mod, !gen_no_cache, hit);
      const std::string content = gen_format == "csv" ? to_csv_text(parse_expansion(text)) : text;
      emit(gen_out, content);
      if (gen_out) print({{"written", *gen_out}, {"cache", gen_no_cache ? "off" : (hit ? "hit" : "miss")}});
    } else if (*catalog) {
      for (const auto& n : catalog_names()) std::cout << n << "\n";
    } else if (*op) {
      static const std::map<std::string, std::size_t> arity{{"witt", 1}, {"up", 1}, {"dop", 1}, {"slice", 1}, {"mul", 2}, {"add", 2}, {"reduce", 1}};
      if (op_inputs.size() != arity.at(op_name)) {
        throw DomainError("op " + op_name + " takes " + std::to_string(arity.at(op_name)) + " input(s), got " + std::to_string(op_inputs.size()));
      }
      std::vector<SiegelExpansion> in;
      for (const auto& path : op_inputs) in.push_back(load(path));
      const auto tagged = [](SiegelExpansion f, const std::string& tag, const std::string& source) {
        // Idempotent operators keep a single tag.
        f.set_note(source.rfind(tag, 0) == 0 ? source : tag + source);
        return f;
      };
      if (op_name == "witt") {
        emit(op_out, to_json_text(witt(in[0])));
      } else if (op_name == "slice") {
        emit(op_out, to_json_text(fj_slice(in[0], op_m), in[0].modulus()));
      } else if (op_name == "up") {
        if (!op_prime) throw DomainError("op up needs --prime");
        const PrimeModulus p(*op_prime);
        emit(op_out, to_json_text(tagged(u_p(in[0], p), "U(" + std::to_string(*op_prime) + "); ", in[0].note())));
      } else if (op_name == "dop") {
        SiegelExpansion g = d_op(in[0], op_times);
        g.set_note("D^" + std::to_string(op_times) + "; " + in[0].note());
        emit(op_out, to_json_text(g));
      } else if (op_name == "reduce") {
        if (!op_prime) throw DomainError("op reduce needs --prime");
        emit(op_out, to_json_text(reduce(in[0], PrimeModulus(*op_prime))));
      } else {
        SiegelExpansion g = op_name == "mul" ? mul(in[0], in[1]) : add(in[0], in[1]);
        g.set_note(op_name + "(" + in[0].note() + ", " + in[1].note() + ")");
        emit(op_out, to_json_text(g));
      }
      if (op_out) print({{"written", *op_out}, {"operator", op_name}});
    } else if (*sturm) {
      const SiegelExpansion f = as_reduced(load(st_file), st_prime);
      const CongruenceReport rep = sturm_gate(f, st_weight.value_or(f.weight()), st_index);
      print(to_json(rep));
      code = verdict_exit(rep.verdict);
    } else if (*congruence) {
      const SiegelExpansion f = load(cg_f), g = load(cg_g);
      const CongruenceReport rep = certify_congruent(f, g, PrimeModulus(cg_prime), cg_weight.value_or(f.weight()), cg_index);
      print(to_json(rep));
      code = verdict_exit(rep.verdict);
    } else if (*membership) {
      const SiegelExpansion f = as_reduced(load(mb_file), mb_prime);
      const MembershipResult res = membership_solve(f, mb_weight, mb_box);
      print(to_json(res, f.modulus()->value()));
      code = res.consistent ? kOk : kRefuted;
    } else if (*filtration) {
      const SiegelExpansion f = as_reduced(load(fl_file), fl_prime);
      const FiltrationReport rep = filtration_evidence(f, fl_weight.value_or(f.formal_weight()), *f.modulus(), fl_cap, fl_box);
      print(to_json(rep));
      code = rep.omega || rep.zero_form ? kOk : kInconclusive;
    } else if (*theorem2) {
      const Theorem2Report rep = theorem2_driver(t2_name, t2_weight, PrimeModulus(t2_prime), t2_box, t2_branch);
      print(to_json(rep));
      if (!rep.form_nonzero) {
        code = kHypothesis;
      } else if (rep.branch == "nonvanishing") {
        code = rep.up_nonzero ? kOk : kInconclusive;
      } else if (!rep.filtration || !rep.filtration->omega) {
        code = kInconclusive;
      } else {
        code = rep.prediction_matches ? kOk : kRefuted;
      }
    } else if (*examples) {
      if (ex_which == "sharpness") {
        const SharpnessExponents e = sharpness_exponents(ex_k);
        const int box = ex_box.value_or(std::max(e.t, 1));
        if (box < e.t) throw DomainError("sharpness needs box >= t(k) = " + std::to_string(e.t));
        const PrimeModulus p(ex_prime);
        const SiegelExpansion g = reduce(sharpness_example(ex_k, box), p);
        const CongruenceReport rep = sturm_gate(g, ex_k, 1);
        bool below_zero = true;
        for (const auto& t : g.layout().indices()) {
          if (t.n <= e.t - 1 && t.m <= e.t - 1 && sgn(g.coeff(t)) != 0) below_zero = false;
        }
        bool witnesses_on_diagonal = !rep.witnesses.empty();
        for (const auto& w : rep.witnesses) witnesses_on_diagonal = witnesses_on_diagonal && w.index.n == e.t && w.index.m == e.t;
        const bool sharp = rep.verdict == Verdict::Refuted && below_zero && witnesses_on_diagonal;
        json out = {{"example", "sharpness"},
                    {"k", ex_k},
                    {"prime", ex_prime},
                    {"t", e.t},
                    {"exponents", {{"E4", e.e4}, {"E6", e.e6}, {"chi10", e.chi10}, {"chi12", e.chi12}}},
                    {"zero_below_t", below_zero},
                    {"witnesses_at_n_m_t", witnesses_on_diagonal},
                    {"sharp", sharp},
                    {"sturm", to_json(rep)}};
        print(out);
        code = sharp ? kOk : kRefuted;
      } else if (ex_which == "level11") {
        const int box = ex_box.value_or(2);
        code = level_example("level11", yoshida_level11(box), scale(igusa_generator("chi12", box), -1), 11, 5, "-chi12");
      } else {
        const int box = ex_box.value_or(2);
        code = level_example("level19", yoshida_level19(box), chi20(box), 19, 4, "chi20");
      }
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnwritable;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kHypothesis;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity failure: " << e.what() << "\n";
    return kIntegrity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kHypothesis;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kHypothesis;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIntegrity;
  }
  return code;
}
