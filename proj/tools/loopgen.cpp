// loopgen: analyze finite power-associative loops given as Cayley tables.
//
// Pipeline stages (validation, order profile, subloop lattice, automorphism
// orbits, jump constants, probabilities) are computed lazily and cached for
// the lifetime of one invocation. All output orderings are deterministic.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "loopgen/analysis.hpp"
#include "loopgen/builtins.hpp"
#include "loopgen/io.hpp"
#include "loopgen/properties.hpp"

using json = nlohmann::ordered_json;
using namespace loopgen;

namespace {

constexpr int kSchemaVersion = 1;

struct Source {
  std::string file;
  std::string builtin;

  std::string name() const {
    return file.empty() ? "builtin:" + builtin : "file:" + file;
  }

  LoopTable load() const {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) fail(Errc::bad_input, "cannot open '" + file + "'");
      return validate_loop(read_cayley(in));
    }
    if (builtin == "s3") return make_s3();
    if (builtin == "paige2") return make_paige_2();
    if (builtin.rfind("cyclic:", 0) == 0) {
      int k = 0;
      try {
        k = std::stoi(builtin.substr(7));
      } catch (const std::exception&) {
        fail(Errc::bad_input, "bad cyclic order in '" + builtin + "'");
      }
      return make_cyclic(k);
    }
    fail(Errc::bad_input, "unknown builtin '" + builtin +
                              "' (expected cyclic:k, s3 or paige2)");
  }
};

OrderType parse_type(const std::string& s) {
  std::vector<int> orders;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      orders.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      fail(Errc::bad_input, "bad order '" + tok + "' in type");
    }
  }
  if (orders.empty()) fail(Errc::bad_input, "empty order type");
  return OrderType::of(std::move(orders));
}

json probability_json(const OrbitPartition& orbits, const GenerationReport& r) {
  json j;
  j["m"] = r.m;
  if (r.type) {
    j["type"] = r.type->orders;
  } else {
    j["type"] = nullptr;
  }
  j["gen_count"] = r.gen_count.str();
  json prob;
  prob["numerator"] = boost::multiprecision::numerator(r.probability).str();
  prob["denominator"] = boost::multiprecision::denominator(r.probability).str();
  prob["decimal"] = decimal3(r.probability);
  j["probability"] = prob;
  json classes = json::array();
  for (const ChainClass& c : r.classes) {
    json jc;
    json seq = json::array();
    for (int o : c.orbit_seq) seq.push_back(orbits.labels[size_t(o)]);
    jc["orbits"] = seq;
    jc["size"] = c.size.str();
    classes.push_back(jc);
  }
  j["classes"] = classes;
  return j;
}

void print_report(std::ostream& out, const OrbitPartition& orbits,
                  const GenerationReport& r) {
  out << "m = " << r.m;
  if (r.type) out << ", type = {" << r.type->str() << "}";
  out << "\n";
  out << "generating tuples: " << r.gen_count << "\n";
  out << "probability: "
      << boost::multiprecision::numerator(r.probability) << "/"
      << boost::multiprecision::denominator(r.probability) << " ("
      << decimal3(r.probability) << ")\n";
  for (const ChainClass& c : r.classes) {
    out << "  class";
    for (int o : c.orbit_seq) out << " " << orbits.labels[size_t(o)];
    out << "  size " << c.size << "\n";
  }
}

std::string members_str(const Subloop& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.members.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.members[i]);
  }
  return out + "}";
}

int run(int argc, char** argv) {
  CLI::App app{"subloop-lattice analysis of finite power-associative loops"};
  app.require_subcommand(1);

  Source source;
  bool as_json = false;
  AnalysisOptions opts;
  int m = -1;
  std::string type_str;
  bool all_types = false;
  uint64_t mc_samples = 0;
  uint64_t mc_seed = 0;
  bool run_properties = false;

  auto add_source = [&](CLI::App* cmd) {
    auto* f = cmd->add_option("--file", source.file,
                              "Cayley table file (text format)");
    auto* b = cmd->add_option("--builtin", source.builtin,
                              "builtin loop: cyclic:k, s3, paige2");
    f->excludes(b);
    b->excludes(f);
    cmd->add_option("--threads", opts.threads, "worker thread cap")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-subloops", opts.max_subloops,
                    "subloop registry cap");
    cmd->add_option("--search-budget", opts.search_budget,
                    "automorphism search node cap");
    cmd->add_option("--oracle-budget", opts.oracle_budget,
                    "exhaustive oracle lookup cap");
    cmd->callback([f, b, cmd] {
      if (f->count() + b->count() != 1)
        throw CLI::ValidationError(cmd->get_name(),
                                   "give exactly one of --file / --builtin");
    });
  };

  CLI::App* info = app.add_subcommand("info", "order, identity, order profile");
  add_source(info);
  info->add_flag("--json", as_json, "JSON output");

  CLI::App* subloops =
      app.add_subcommand("subloops", "enumerate the subloop lattice");
  add_source(subloops);
  subloops->add_flag("--json", as_json, "JSON output");

  CLI::App* orbits_cmd =
      app.add_subcommand("orbits", "automorphism orbits of the subloops");
  add_source(orbits_cmd);
  orbits_cmd->add_flag("--json", as_json, "JSON output");

  CLI::App* nu = app.add_subcommand("nu", "jump constants as TSV");
  add_source(nu);
  nu->add_flag("--json", as_json, "JSON output");

  CLI::App* prob = app.add_subcommand("prob", "generation probabilities");
  add_source(prob);
  prob->add_flag("--json", as_json, "JSON output");
  prob->add_option("--m", m, "tuple length");
  prob->add_option("--type", type_str, "order type, e.g. 2,2,3");
  prob->add_flag("--all-types", all_types,
                 "all order types of length m with nonzero count");

  CLI::App* verify =
      app.add_subcommand("verify", "check the formula engine against the "
                                   "brute-force oracle");
  add_source(verify);
  verify->add_option("--m", m, "tuple length");
  verify->add_option("--type", type_str, "order type filter");
  verify->add_option("--mc", mc_samples, "Monte Carlo samples instead of "
                                         "exhaustive counting");
  verify->add_option("--seed", mc_seed, "Monte Carlo seed");
  verify->add_flag("--properties", run_properties,
                   "also run the structural property suite");

  CLI::App* dot = app.add_subcommand("export-dot",
                                     "orbit digraph with jump constants");
  add_source(dot);

  CLI::App* emit = app.add_subcommand("emit-table",
                                      "write the Cayley table (text format)");
  add_source(emit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  Analysis an(source.load(), opts);

  if (*info) {
    auto pa = check_power_associative(an.loop());
    bool assoc = an.loop().is_associative();
    bool comm = an.loop().is_commutative();
    if (as_json) {
      json j;
      j["schema_version"] = kSchemaVersion;
      j["source"] = source.name();
      j["order"] = an.loop().size();
      j["neutral"] = an.loop().neutral();
      j["power_associative"] = pa.ok;
      if (!pa.ok) j["witness"] = pa.witness;
      j["associative"] = assoc;
      j["commutative"] = comm;
      if (pa.ok) {
        json prof = json::object();
        for (const auto& [i, elems] : an.profile().by_order)
          prof[std::to_string(i)] = elems.size();
        j["order_profile"] = prof;
      }
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "source: " << source.name() << "\n";
      std::cout << "order: " << an.loop().size() << "\n";
      std::cout << "neutral: " << an.loop().neutral() << "\n";
      std::cout << "power-associative: " << (pa.ok ? "yes" : "no");
      if (!pa.ok) std::cout << " (witness element " << pa.witness << ")";
      std::cout << "\n";
      std::cout << "associative: " << (assoc ? "yes" : "no") << "\n";
      std::cout << "commutative: " << (comm ? "yes" : "no") << "\n";
      if (pa.ok)
        for (const auto& [i, elems] : an.profile().by_order)
          std::cout << "|D_" << i << "| = " << elems.size() << "\n";
    }
    return 0;
  }

  if (*subloops) {
    const SubloopLattice& lat = an.lattice();
    std::map<int, int> by_size;
    for (int id = 0; id < lat.count(); ++id) by_size[lat.at(id).size()] += 1;
    if (as_json) {
      json j;
      j["schema_version"] = kSchemaVersion;
      j["source"] = source.name();
      j["total"] = lat.count();
      j["covering_pairs"] = lat.covers().size();
      json sizes = json::object();
      for (auto [k, c] : by_size) sizes[std::to_string(k)] = c;
      j["by_cardinality"] = sizes;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "subloops: " << lat.count() << "\n";
      std::cout << "covering pairs: " << lat.covers().size() << "\n";
      for (auto [k, c] : by_size)
        std::cout << "cardinality " << k << ": " << c << "\n";
    }
    return 0;
  }

  if (*orbits_cmd) {
    const OrbitPartition& orb = an.orbits();
    if (as_json) {
      json j;
      j["schema_version"] = kSchemaVersion;
      j["source"] = source.name();
      json arr = json::array();
      for (int o = 0; o < orb.count(); ++o) {
        json jo;
        jo["label"] = orb.labels[size_t(o)];
        jo["representative"] = an.lattice().at(orb.reps[size_t(o)]).members;
        jo["orbit_size"] = orb.sizes[size_t(o)];
        jo["cardinality"] = an.lattice().at(orb.reps[size_t(o)]).size();
        arr.push_back(jo);
      }
      j["orbits"] = arr;
      std::cout << j.dump(2) << "\n";
    } else {
      for (int o = 0; o < orb.count(); ++o)
        std::cout << orb.labels[size_t(o)] << "\t"
                  << members_str(an.lattice().at(orb.reps[size_t(o)])) << "\t"
                  << "orbit size " << orb.sizes[size_t(o)] << "\t"
                  << "cardinality " << an.lattice().at(orb.reps[size_t(o)]).size()
                  << "\n";
    }
    return 0;
  }

  if (*nu) {
    const JumpTable& jt = an.jumps();
    const OrbitPartition& orb = an.orbits();
    if (as_json) {
      json j;
      j["schema_version"] = kSchemaVersion;
      j["source"] = source.name();
      json rows = json::array();
      for (int a = 0; a < orb.count(); ++a)
        for (int i : jt.realized_orders())
          for (int b = 0; b < orb.count(); ++b)
            if (jt.nu_i(a, i, b)) {
              json row;
              row["from"] = orb.labels[size_t(a)];
              row["order"] = i;
              row["to"] = orb.labels[size_t(b)];
              row["count"] = jt.nu_i(a, i, b);
              rows.push_back(row);
            }
      j["nu"] = rows;
      std::cout << j.dump(2) << "\n";
    } else {
      for (int a = 0; a < orb.count(); ++a) {
        for (int i : jt.realized_orders())
          for (int b = 0; b < orb.count(); ++b)
            if (jt.nu_i(a, i, b))
              std::cout << orb.labels[size_t(a)] << "\t" << i << "\t"
                        << orb.labels[size_t(b)] << "\t" << jt.nu_i(a, i, b)
                        << "\n";
        for (int b = 0; b < orb.count(); ++b)
          if (jt.nu(a, b))
            std::cout << orb.labels[size_t(a)] << "\t*\t"
                      << orb.labels[size_t(b)] << "\t" << jt.nu(a, b) << "\n";
      }
    }
    return 0;
  }

  if (*prob) {
    if (!type_str.empty()) {
      OrderType r = parse_type(type_str);
      if (m >= 0 && m != r.length())
        fail(Errc::bad_input, "--m disagrees with --type length");
      GenerationReport rep = an.generation_typed(r);
      if (as_json) {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["source"] = source.name();
        j["report"] = probability_json(an.orbits(), rep);
        std::cout << j.dump(2) << "\n";
      } else {
        print_report(std::cout, an.orbits(), rep);
      }
      return 0;
    }
    if (m < 0) fail(Errc::bad_input, "prob needs --m or --type");
    if (all_types) {
      json arr = json::array();
      for (const OrderType& r : all_order_types(an.profile(), m)) {
        GenerationReport rep = an.generation_typed(r);
        if (rep.gen_count == 0) continue;
        if (as_json)
          arr.push_back(probability_json(an.orbits(), rep));
        else
          print_report(std::cout, an.orbits(), rep);
      }
      if (as_json) {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["source"] = source.name();
        j["m"] = m;
        j["types"] = arr;
        std::cout << j.dump(2) << "\n";
      }
      return 0;
    }
    GenerationReport rep = an.generation(m);
    if (as_json) {
      json j;
      j["schema_version"] = kSchemaVersion;
      j["source"] = source.name();
      j["report"] = probability_json(an.orbits(), rep);
      std::cout << j.dump(2) << "\n";
    } else {
      print_report(std::cout, an.orbits(), rep);
    }
    return 0;
  }

  if (*verify) {
    if (m < 0 && type_str.empty() && !run_properties)
      fail(Errc::bad_input, "verify needs --m, --type or --properties");
    bool mismatch = false;
    if (m >= 0 || !type_str.empty()) {
      std::optional<OrderType> type;
      if (!type_str.empty()) {
        type = parse_type(type_str);
        if (m >= 0 && m != type->length())
          fail(Errc::bad_input, "--m disagrees with --type length");
        m = type->length();
      }
      GenerationReport formula =
          type ? an.generation_typed(*type) : an.generation(m);
      if (mc_samples > 0) {
        OracleResult mc = an.oracle_monte_carlo(m, mc_samples, mc_seed, type);
        double p = double(formula.probability.convert_to<double>());
        double hat = double(mc.mc->hits) / double(mc.mc->samples);
        double sigma =
            std::sqrt(std::max(p * (1 - p) / double(mc.mc->samples), 1e-300));
        double dev = std::abs(hat - p) / sigma;
        std::cout << "formula " << decimal3(formula.probability)
                  << "  sampled " << mc.mc->hits << "/" << mc.mc->samples
                  << " (" << hat << ")  deviation " << dev << " sigma\n";
        if (dev > 4.0) mismatch = true;
      } else {
        OracleResult oracle = an.oracle_exhaustive(m, type);
        std::cout << "formula " << formula.gen_count << "  oracle "
                  << oracle.gen_count << "\n";
        if (formula.gen_count != oracle.gen_count) mismatch = true;
      }
    }
    if (run_properties) {
      PropertyReport props = run_property_suite(an);
      for (const auto& item : props.items)
        std::cout << (item.passed ? "ok   " : "FAIL ") << item.name
                  << (item.detail.empty() ? "" : "  (" + item.detail + ")")
                  << "\n";
      if (!props.all_passed()) mismatch = true;
    }
    if (mismatch) {
      std::cerr << "verification mismatch\n";
      return 3;
    }
    std::cout << "verified\n";
    return 0;
  }

  if (*dot) {
    export_dot(std::cout, an.lattice(), an.orbits(), an.jumps());
    return 0;
  }

  if (*emit) {
    write_cayley(std::cout, an.loop());
    return 0;
  }

  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const LoopError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::resource_limit:
      case Errc::search_budget:
      case Errc::oracle_budget:
        return 2;
      case Errc::verify_mismatch:
        return 3;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
