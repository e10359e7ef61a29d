// seqinv: command-line front end to the library.
//
//   seqinv terms --seq c3 --count 20
//   seqinv automaton --seq c5 --out a5.json
//   seqinv analyze sync --machine a3.json --max-len 4
//   seqinv verify --statement @walnut2.txt --machine v=av.json
//   seqinv reproduce-paper
//
// Output is JSON unless --csv is given.

#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqinv/seqinv.hpp"

using nlohmann::json;
using namespace seqinv;

namespace {

struct Globals {
  bool csv = false;
  std::string config_path;
};

RunConfig load_config(const Globals& g) {
  RunConfig c = g.config_path.empty() ? RunConfig{} : RunConfig::load(g.config_path);
  c.apply_environment();
  c.csv = c.csv || g.csv;
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

template <class T>
std::string join(const std::vector<T>& xs, const char* sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? sep : "") << xs[i];
  return os.str();
}

/// Parses "12345", "80*2^20" or "9^12".
BigInt parse_bound(const std::string& s) {
  static const std::regex form(R"re(^\s*(?:(\d+)\s*\*\s*)?(\d+)(?:\s*\^\s*(\d+))?\s*$)re");
  std::smatch m;
  if (!std::regex_match(s, m, form)) throw Error("cannot parse bound: " + s);
  BigInt factor = m[1].matched ? BigInt(m[1].str()) : BigInt(1);
  BigInt base(m[2].str());
  BigInt v = 1;
  if (m[3].matched) {
    for (unsigned long e = std::stoul(m[3].str()); e > 0; --e) v *= base;
  } else {
    v = base;
  }
  return factor * v;
}

// --- machine sources ---------------------------------------------------------

struct MachineSource {
  std::string file;
  std::string seq;
  std::string route = "algebraic";
  u64 budget = 0;
  u64 verify = 0;
  u32 min_depth = 64;
  u32 max_states = 100000;
  u32 base_power = 1;

  void attach(CLI::App* cmd, bool file_option = true) {
    if (file_option) cmd->add_option("--machine", file, "Machine file (JSON or DOT)");
    cmd->add_option("--seq", seq, "Build the machine of this sequence (c3, c5, u, v, r, t3, ...)");
    cmd->add_option("--route", route, "algebraic or oracle")->check(CLI::IsMember({"algebraic", "oracle"}));
    cmd->add_option("--budget", budget, "Term budget (default from config)");
    cmd->add_option("--verify", verify, "Certify below this index (default: the budget)");
    cmd->add_option("--min-depth", min_depth, "Minimum signature depth for the oracle route");
    cmd->add_option("--max-states", max_states, "Give up beyond this many states");
    cmd->add_option("--base-power", base_power, "Read this many digits per step");
  }

  Dfao load(const RunConfig& cfg) const {
    Dfao a = build(cfg);
    return base_power > 1 ? power_alphabet(a, base_power) : a;
  }

 private:
  Dfao build(const RunConfig& cfg) const {
    if (!file.empty()) {
      std::string text = read_file(file);
      return text.find("digraph") != std::string::npos ? dot_to_dfao(text) : dfao_from_json(text);
    }
    if (seq.empty()) throw Error("give --machine FILE or --seq NAME");
    const SequenceId id = SequenceId::parse(seq);
    const u64 T = budget ? budget : cfg.budget_for(id.modulus());
    const u64 M = verify ? verify : std::max(T, cfg.verify_depth);
    TermBlock t = terms(id, std::max(T, M));
    SynthesisOptions o;
    o.term_budget = T;
    o.verify_below = M;
    o.min_depth = min_depth;
    o.max_states = max_states;
    return build_machine(id, route == "oracle" ? Route::Oracle : Route::Algebraic, t.values, o);
  }
};

json machine_summary(const Dfao& a) {
  return {{"states", a.size()}, {"p", a.modulus().value()}, {"base", a.base()}, {"certified_below", a.certified_below()}};
}

json words_json(const std::vector<DigitString>& ws) {
  json j = json::array();
  for (const auto& w : ws) j.push_back(w.str());
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal inverses of automatic sequences: terms, automata, and analyses"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--csv", g.csv, "CSV output instead of JSON");
  app.add_option("--config", g.config_path, "key = value config file");

  // terms
  auto* c_terms_cmd = app.add_subcommand("terms", "Print the first terms of a sequence");
  std::string t_seq, t_method = "fast";
  std::size_t t_count = 20;
  bool t_bfile = false;
  c_terms_cmd->add_option("--seq", t_seq, "Sequence name")->required();
  c_terms_cmd->add_option("--count", t_count, "Number of terms");
  c_terms_cmd->add_option("--method", t_method, "fast, newton, recurrence or reference")
      ->check(CLI::IsMember({"fast", "newton", "recurrence", "reference"}));
  c_terms_cmd->add_flag("--bfile", t_bfile, "OEIS b-file format");

  // automaton
  auto* c_auto = app.add_subcommand("automaton", "Build a machine and write it as JSON or DOT");
  MachineSource a_src;
  a_src.attach(c_auto, false);
  std::string a_out, a_format = "json";
  c_auto->add_option("--out", a_out, "Output file (default stdout)");
  c_auto->add_option("--format", a_format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

  // analyze
  auto* c_an = app.add_subcommand("analyze", "Analyses of a machine");
  c_an->require_subcommand(1);
  MachineSource an_src;
  std::size_t an_len = 6;
  auto* c_sync = c_an->add_subcommand("sync", "Synchronizing words");
  an_src.attach(c_sync);
  c_sync->add_option("--max-len", an_len, "Longest word searched");
  MachineSource st_src;
  auto* c_struct = c_an->add_subcommand("structure", "Strongly connected components and levels");
  st_src.attach(c_struct);
  MachineSource bp_src;
  auto* c_bip = c_an->add_subcommand("bipartite", "2-colouring in which every transition changes side");
  bp_src.attach(c_bip);
  auto* c_runs = c_an->add_subcommand("runs", "Longest runs in a term prefix");
  std::string r_seq;
  std::size_t r_count = 1000000;
  c_runs->add_option("--seq", r_seq, "Sequence name")->required();
  c_runs->add_option("--count", r_count, "Terms scanned");

  // verify
  auto* c_ver = app.add_subcommand("verify", "Decide a progression statement");
  std::string v_stmt;
  std::vector<std::string> v_machines;
  u64 v_cutoff = 0, v_brute = 0;
  c_ver->add_option("--statement", v_stmt, "Statement text, or @file")->required();
  c_ver->add_option("--machine", v_machines, "name=file, or file when one sequence is mentioned")->required();
  c_ver->add_option("--cutoff", v_cutoff, "Enumerate n below this directly");
  c_ver->add_option("--brute", v_brute, "Also brute-force n below this");

  // family
  auto* c_fam = app.add_subcommand("family", "Outputs on a pumped family of words");
  MachineSource f_src;
  f_src.attach(c_fam);
  std::string f_prefix, f_pump, f_suffix, f_affine;
  u64 f_block = 0, f_offset = 0;
  bool f_all = false;
  c_fam->add_option("--prefix", f_prefix, "Word before the pump, LSD first");
  c_fam->add_option("--pump", f_pump, "Pumped word");
  c_fam->add_option("--suffix", f_suffix, "Word after the pump");
  c_fam->add_option("--affine", f_affine, "A,e0,step,B for A p^(e0 + step k) + B");
  c_fam->add_option("--block", f_block, "A for the blocks [A p^k, (A+1) p^k)");
  c_fam->add_option("--offset", f_offset, "Shift every member by this amount");
  c_fam->add_flag("--all-states", f_all, "Start from every state instead of the initial one");

  // count
  auto* c_cnt = app.add_subcommand("count", "Exact letter counts below a bound");
  MachineSource cn_src;
  cn_src.attach(c_cnt);
  std::string cn_bound;
  c_cnt->add_option("--below", cn_bound, "Bound N, e.g. 1000000, 9^12 or 80*2^20")->required();

  // probe
  auto* c_probe = app.add_subcommand("probe", "Finite checks of the open conjectures for c^(p)");
  u32 pr_p = 7;
  u64 pr_n = 0, pr_scan = 0, pr_states = 0;
  c_probe->add_option("--p", pr_p, "Prime p > 3");
  c_probe->add_option("--n", pr_n, "Check offsets for n below this");
  c_probe->add_option("--scan", pr_scan, "Run maxima over this many terms");
  c_probe->add_option("--max-states", pr_states, "State limit for the machine attempt");

  // oeis
  auto* c_oeis = app.add_subcommand("oeis", "Compare an OEIS b-file with computed terms");
  std::string o_file, o_seq;
  c_oeis->add_option("--bfile", o_file, "b-file path")->required();
  c_oeis->add_option("--seq", o_seq, "Sequence name")->required();

  // export
  auto* c_exp = app.add_subcommand("export", "Convert a machine between JSON and DOT");
  MachineSource e_src;
  e_src.attach(c_exp);
  std::string e_format = "dot", e_out;
  c_exp->add_option("--format", e_format, "dot or json")->check(CLI::IsMember({"json", "dot"}));
  c_exp->add_option("--out", e_out, "Output file (default stdout)");

  // reproduce-paper
  auto* c_rep = app.add_subcommand("reproduce-paper", "Run every acceptance criterion");
  std::vector<int> rp_only, rp_tolerate;
  std::string rp_fixtures, rp_report;
  c_rep->add_option("--only", rp_only, "Criterion numbers to run")->delimiter(',');
  c_rep->add_option("--tolerate", rp_tolerate, "Criteria whose failure does not change the exit status")
      ->delimiter(',');
  c_rep->add_option("--fixtures", rp_fixtures, "Directory with OEIS b-files");
  c_rep->add_option("--report", rp_report, "Also write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = load_config(g);

    if (c_terms_cmd->parsed()) {
      const SequenceId id = SequenceId::parse(t_seq);
      TermBlock t;
      if (t_method == "fast") t = terms(id, t_count);
      else if (id.kind == SeqKind::C) {
        Method m = t_method == "newton" ? Method::Newton
                   : t_method == "recurrence" ? Method::Recurrence : Method::ReferenceInverse;
        t = c_terms(Prime(id.p), t_count, m);
      } else if (id.kind == SeqKind::U || id.kind == SeqKind::V) {
        t = inverse_terms(id.kind, t_count, t_method == "reference" ? Method::ReferenceInverse : Method::Newton);
      } else {
        throw Error("--method applies to c, u and v only");
      }
      if (t_bfile) std::cout << to_bfile(t);
      else if (cfg.csv) std::cout << join(t.values) << "\n";
      else emit({{"seq", id.name()}, {"method", method_name(t.method)}, {"count", t.size()}, {"values", t.values}});
      return 0;
    }

    if (c_auto->parsed()) {
      Dfao a = a_src.load(cfg);
      write_text(a_out, a_format == "dot" ? to_dot(a) : to_json(a).dump(1) + "\n");
      if (!a_out.empty()) std::cerr << a.size() << " states written to " << a_out << "\n";
      return 0;
    }

    if (c_sync->parsed()) {
      Dfao a = an_src.load(cfg);
      auto shortest = shortest_sync_words(a, an_len);
      json j = machine_summary(a);
      if (a.size() <= 6000) {
        auto cert = is_synchronizing(a);
        j["synchronizing"] = cert.synchronizing;
        if (cert.stuck_pair) j["stuck_pair"] = {cert.stuck_pair->first, cert.stuck_pair->second};
      }
      j["shortest_length"] = shortest.length ? json(*shortest.length) : json(nullptr);
      j["shortest_words"] = words_json(shortest.words);
      j["targets"] = shortest.targets;
      if (cfg.csv) std::cout << join(j["shortest_words"].get<std::vector<std::string>>()) << "\n";
      else emit(j);
      return 0;
    }

    if (c_struct->parsed()) {
      Dfao a = st_src.load(cfg);
      StructureReport rep = structure_report(a);
      json comps = json::array();
      for (const auto& c : rep.components)
        comps.push_back({{"size", c.states.size()},
                         {"kind", component_kind_name(c.kind)},
                         {"level", c.level},
                         {"successors", c.successors}});
      if (cfg.csv) {
        std::cout << "component,size,kind,level\n";
        for (std::size_t i = 0; i < rep.components.size(); ++i)
          std::cout << i << "," << rep.components[i].states.size() << ","
                    << component_kind_name(rep.components[i].kind) << "," << rep.components[i].level << "\n";
      } else {
        json j = machine_summary(a);
        j["components"] = comps;
        j["level_sizes"] = rep.level_sizes();
        j["downward_only"] = rep.downward_only;
        emit(j);
      }
      return 0;
    }

    if (c_bip->parsed()) {
      Dfao a = bp_src.load(cfg);
      auto b = transition_bipartite(a);
      json j = machine_summary(a);
      j["bipartite"] = b.has_value();
      if (b) j["sides"] = {b->sides[0], b->sides[1]};
      emit(j);
      return 0;
    }

    if (c_runs->parsed()) {
      const SequenceId id = SequenceId::parse(r_seq);
      TermBlock t = terms(id, r_count);
      RunReport rep = max_runs(t.values, t.modulus);
      if (cfg.csv) {
        std::cout << "letter,max_run,first_start\n";
        for (std::size_t x = 0; x < rep.per_letter.size(); ++x)
          std::cout << x << "," << rep.per_letter[x].length << "," << rep.per_letter[x].first_start << "\n";
        std::cout << "nonzero," << rep.nonzero.length << "," << rep.nonzero.first_start << "\n";
      } else {
        json letters = json::array();
        for (std::size_t x = 0; x < rep.per_letter.size(); ++x)
          letters.push_back({{"letter", x}, {"max_run", rep.per_letter[x].length}, {"first_start", rep.per_letter[x].first_start}});
        emit({{"seq", id.name()},
              {"scanned", rep.scanned},
              {"letters", letters},
              {"nonzero", {{"max_run", rep.nonzero.length}, {"first_start", rep.nonzero.first_start}}}});
      }
      return 0;
    }

    if (c_ver->parsed()) {
      std::string text = v_stmt.size() > 1 && v_stmt[0] == '@' ? read_file(v_stmt.substr(1)) : v_stmt;
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.pop_back();
      auto s = ProgressionStatement::parse(text);
      std::set<std::string> names;
      for (const auto& t : s.terms()) names.insert(t.seq);
      std::map<std::string, Dfao> owned;
      for (const auto& spec : v_machines) {
        auto eq = spec.find('=');
        std::string name, path;
        if (eq == std::string::npos) {
          if (names.size() != 1) throw Error("name the machine as seq=file when the statement mentions several");
          name = *names.begin();
          path = spec;
        } else {
          name = spec.substr(0, eq);
          path = spec.substr(eq + 1);
        }
        MachineSource src;
        src.file = path;
        owned.insert_or_assign(name, src.load(cfg));
      }
      MachineMap mm;
      for (const auto& [k, v] : owned) mm[k] = &v;
      auto verdict = verify_statement(s, mm, v_cutoff ? v_cutoff : cfg.cutoff);
      json j{{"statement", text},
             {"holds", verdict.holds},
             {"counterexample", verdict.counterexample ? json(*verdict.counterexample) : json(nullptr)},
             {"enumerated_below", verdict.enumerated_below},
             {"product_states", verdict.product_states}};
      if (v_brute) {
        auto b = verify_statement_bruteforce(s, mm, v_brute);
        j["brute_force"] = {{"below", v_brute}, {"counterexample", b ? json(*b) : json(nullptr)}};
      }
      emit(j);
      return verdict.holds ? 0 : 1;
    }

    if (c_fam->parsed()) {
      Dfao a = f_src.load(cfg);
      const u32 p = a.base();
      WordFamily f;
      if (!f_affine.empty()) {
        std::vector<std::string> parts;
        std::stringstream ss(f_affine);
        for (std::string x; std::getline(ss, x, ',');) parts.push_back(x);
        if (parts.size() != 4) throw Error("--affine expects A,e0,step,B");
        f = affine_family(std::stoull(parts[0]), p, static_cast<u32>(std::stoul(parts[1])),
                          static_cast<u32>(std::stoul(parts[2])), std::stoll(parts[3]));
      } else if (f_block) {
        f = block_family(f_block, p);
      } else {
        if (f_pump.empty()) throw Error("give --pump, --affine or --block");
        f = word_family(f_prefix, f_pump, f_suffix, p);
      }
      if (f_offset) f = offset_family(f, f_offset);
      FamilyVerdict v = family_eval(a, f, f_all ? FamilyStart::AllStates : FamilyStart::Initial);
      json rows = json::array();
      for (std::size_t k = 0; k < v.outputs.size(); ++k) rows.push_back({{"k", k}, {"letters", v.outputs[k]}});
      emit({{"family", f.str()},
            {"preperiod", v.preperiod},
            {"period", v.period},
            {"constant", v.constant() ? json(*v.constant()) : json(nullptr)},
            {"residues", rows}});
      return 0;
    }

    if (c_cnt->parsed()) {
      Dfao a = cn_src.load(cfg);
      BigInt N = parse_bound(cn_bound);
      auto counts = count_letters(a, N);
      if (cfg.csv) {
        std::cout << "letter,count\n";
        for (std::size_t x = 0; x < counts.size(); ++x) std::cout << x << "," << counts[x] << "\n";
      } else {
        json c = json::array();
        for (const auto& x : counts) c.push_back(x.str());
        emit({{"below", N.str()}, {"counts", c}});
      }
      return 0;
    }

    if (c_probe->parsed()) {
      ConjectureProbe pr = probe_conjectures(pr_p, pr_n ? pr_n : cfg.probe_n, pr_scan ? pr_scan : cfg.probe_scan,
                                             pr_states ? pr_states : cfg.probe_max_states);
      emit(criteria::probe_json(pr));
      return 0;
    }

    if (c_oeis->parsed()) {
      BFile b = parse_bfile(read_file(o_file), o_file);
      const SequenceId id = SequenceId::parse(o_seq);
      TermBlock t = terms(id, b.first_index + b.size());
      OeisComparison c = compare_oeis(b, t.values);
      emit({{"bfile", o_file},
            {"seq", id.name()},
            {"compared", c.compared},
            {"agree_len", c.agree_len},
            {"first_mismatch", c.first_mismatch ? json(*c.first_mismatch) : json(nullptr)},
            {"full_agreement", c.full_agreement()}});
      return c.full_agreement() ? 0 : 1;
    }

    if (c_exp->parsed()) {
      Dfao a = e_src.load(cfg);
      write_text(e_out, e_format == "dot" ? to_dot(a) : to_json(a).dump(1) + "\n");
      return 0;
    }

    if (c_rep->parsed()) {
      if (!rp_fixtures.empty()) cfg.fixtures_dir = rp_fixtures;
      Workspace w(cfg);
      auto results = reproduce(w, rp_only, [](const CriterionResult& r) { std::cerr << result_line(r) << "\n"; });
      bool ok = true;
      json report = json::array();
      for (const auto& r : results) {
        report.push_back(to_json(r));
        const bool tolerated = std::find(rp_tolerate.begin(), rp_tolerate.end(), r.id) != rp_tolerate.end();
        if (r.status == Status::Fail && !tolerated) ok = false;
      }
      if (!rp_report.empty()) write_text(rp_report, report.dump(2) + "\n");
      if (cfg.csv) {
        std::cout << "criterion,title,status,seconds\n";
        for (const auto& r : results)
          std::cout << r.id << ",\"" << r.title << "\"," << status_name(r.status) << "," << r.seconds << "\n";
      } else {
        emit({{"criteria", report}, {"all_hard_pass", ok}});
      }
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "seqinv: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
