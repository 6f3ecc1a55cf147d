#include "halllab/cli.hpp"

#include "halllab/bounds.hpp"
#include "halllab/errors.hpp"
#include "halllab/extraction.hpp"
#include "halllab/fractional.hpp"
#include "halllab/generators.hpp"
#include "halllab/graph_io.hpp"
#include "halllab/hall_ratio.hpp"
#include "halllab/independence.hpp"
#include "halllab/report.hpp"
#include "halllab/subdivision.hpp"
#include "halllab/witness.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace halllab::cli {

using nlohmann::json;

namespace {

// Verification failures and unmet expectations; not an error in the input.
struct CheckFailed {};

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("HALLLAB_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw PreconditionError("HALLLAB_SEED is not an unsigned integer");
  }
  return 1;
}

std::string set_string(const std::vector<Vertex>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
  return s + "}";
}

Graph load_graph(const std::string& path, Io& io) {
  if (path == "-") return parse_graph_auto(read_all(io.in));
  return read_graph_file(path);
}

void write_text(const std::string& path, const std::string& text, Io& io) {
  if (path == "-") {
    io.out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot write '" + path + "'");
  f << text;
}

json read_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot open '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ParseError(0, "'" + path + "' is not valid JSON: " + e.what());
  }
}

json trial_json(const HbTrial& t) {
  return {{"index", t.index},
          {"edges", t.edges},
          {"alpha_weighted", t.budget_exceeded ? std::string() : to_string(t.alpha_weighted)},
          {"certified", t.certified},
          {"chi_f_lower", t.budget_exceeded ? std::string() : to_string(t.chi_f_lower)},
          {"nodes", t.nodes},
          {"budget_exceeded", t.budget_exceeded}};
}

json trace_json(const ExtractionTrace& t) {
  return {{"input_edges", t.input_edges},     {"bipartite_edges", t.bipartite_edges},
          {"peel_threshold", t.peel_threshold}, {"peel_survivors", t.peel_survivors},
          {"side_a2", t.side_a2},             {"side_b2", t.side_b2},
          {"deterministic_b", t.deterministic_b}, {"sampled_b", t.sampled_b},
          {"qualified_a", t.qualified_a},     {"attempts", t.attempts},
          {"warnings", t.warnings},           {"failure", t.failure}};
}

void print_trace(const Extraction& e, Io& io) {
  const auto& t = e.trace;
  for (const auto& w : t.warnings) io.out << "warning: " << w << "\n";
  io.out << "bipartite edges = " << t.bipartite_edges << " of " << t.input_edges << "\n";
  io.out << "core (min degree >= " << t.peel_threshold << ") vertices = " << t.peel_survivors << "\n";
  if (e.ok())
    io.out << "extraction: success, |A| = " << e.pair->parts.side_a.size() << ", |B| = " << e.pair->parts.side_b.size()
           << ", attempts = " << t.attempts << "\n";
  else
    io.out << "extraction: failed, " << t.failure << "\n";
}

// Aggregates shared by thm1 and sample-hb.
void summarize_trials(const std::vector<HbTrial>& trials, ExperimentReport& rep, Io& io) {
  std::size_t certified = 0, budget = 0;
  for (const auto& t : trials) {
    certified += t.certified;
    budget += t.budget_exceeded;
    rep.trials.push_back(trial_json(t));
  }
  rep.aggregate["trials"] = trials.size();
  rep.aggregate["certified"] = certified;
  rep.aggregate["budget_exceeded"] = budget;
  rep.aggregate["certified_fraction"] = trials.empty() ? 0.0 : double(certified) / double(trials.size());
  io.out << "certified = " << certified << "/" << trials.size() << "\n";
  if (budget) io.out << "budget exceeded in " << budget << " trials\n";
}

struct Options {
  std::string json_path;
  std::uint64_t seed = 0;
  std::size_t parallel = 1;
  std::string input = "-";
  std::string output = "-";
  std::uint64_t node_limit = SearchLimits{}.node_limit;

  // gen
  unsigned kneser_a = 0, kneser_b = 0;
  std::size_t mycielski_steps = 0;
  std::size_t join_k = 0;
  std::string witness_out;
  std::size_t gnp_n = 0;
  std::string gnp_p;
  std::uint64_t layered_n = 0;
  std::size_t layered_m = 0;
  std::size_t b = 0, a = 0, q = 0;

  // invariants
  bool alpha = false, hall = false, chif = false, clique = false, turan = false;
  std::string cert_out;
  std::string method = "cg";

  // pipelines
  std::size_t retries = default_max_retries;
  std::string pair_out;
  std::size_t c = 0;
  std::size_t trials = 100;
  std::size_t gen_n = 0;
  std::string gen_p = "1/2";

  // bounds
  double mu = 0, delta = 0;
  std::string tail = "lower";
  std::uint64_t deg = 0, n_b = 0;
  std::uint64_t root = 0;
  std::size_t big_m = 2, small_m = 2;
  std::uint64_t s = 1, t = 4;
  std::string side = "both";
  std::uint64_t from = 2, to = 64;

  // verify / batch
  std::string file;
  std::string graph_path;
};

int dispatch(const std::vector<std::string>& args, Io& io, ExperimentReport& rep, std::string* json_path);

// ---------------------------------------------------------------- gen

int cmd_gen(CLI::App& gen, Options& o, Io& io, ExperimentReport& rep) {
  const std::string kind = gen.get_subcommands().front()->get_name();
  rep.command = "gen " + kind;
  rep.parameters["kind"] = kind;
  Graph g;
  if (kind == "kneser") {
    g = kneser(o.kneser_a, o.kneser_b);
    rep.parameters["a"] = o.kneser_a;
    rep.parameters["b"] = o.kneser_b;
  } else if (kind == "mycielski") {
    if (o.mycielski_steps) {
      g = build_graph(2, std::vector<Edge>{{0, 1}});
      for (std::size_t k = 2; k < o.mycielski_steps; ++k) g = mycielski(g);
    } else {
      g = mycielski(load_graph(o.input, io));
    }
    rep.parameters["order_index"] = o.mycielski_steps;
    rep.parameters["input"] = o.input;
  } else if (kind == "join") {
    g = join_of_copies(load_graph(o.input, io), o.join_k);
    rep.parameters["k"] = o.join_k;
    rep.parameters["input"] = o.input;
  } else if (kind == "subdivide") {
    const Graph h = load_graph(o.input, io);
    auto sub = one_subdivision(h);
    g = sub.graph;
    if (!o.witness_out.empty()) write_text(o.witness_out, witness_to_json(sub.witness, g).dump(2) + "\n", io);
    rep.parameters["input"] = o.input;
    rep.parameters["witness_out"] = o.witness_out;
  } else if (kind == "gnp") {
    g = gnp(o.gnp_n, parse_rational(o.gnp_p), Seed{o.seed});
    rep.parameters["n"] = o.gnp_n;
    rep.parameters["p"] = to_string(parse_rational(o.gnp_p));
  } else if (kind == "layered") {
    auto lg = sample_layered(o.layered_n, o.layered_m, Seed{o.seed});
    g = lg.graph;
    rep.parameters["n"] = o.layered_n;
    rep.parameters["M"] = o.layered_m;
    rep.aggregate["layer_sizes"] = lg.layer_size;
  } else if (kind == "semiregular") {
    g = random_semiregular(o.b, o.a, o.q, Seed{o.seed}).graph;
    rep.parameters["b"] = o.b;
    rep.parameters["a"] = o.a;
    rep.parameters["q"] = o.q;
  }
  rep.aggregate["vertices"] = g.order();
  rep.aggregate["edges"] = g.size();
  rep.aggregate["graph_hash"] = hash_hex(graph_hash(g));
  write_text(o.output, emit_edge_list(g), io);
  return ok;
}

// ---------------------------------------------------------------- invariants

int cmd_invariants(Options& o, Io& io, ExperimentReport& rep) {
  const Graph g = load_graph(o.input, io);
  const SearchLimits limits{o.node_limit};
  if (!(o.alpha || o.hall || o.chif || o.clique || o.turan)) o.alpha = o.hall = o.chif = o.clique = o.turan = true;
  rep.parameters = {{"input", o.input},  {"alpha", o.alpha},   {"hall_ratio", o.hall}, {"chi_f", o.chif},
                    {"clique", o.clique}, {"turan", o.turan},  {"method", o.method},   {"node_limit", o.node_limit},
                    {"cert_out", o.cert_out}};
  rep.aggregate["vertices"] = g.order();
  rep.aggregate["edges"] = g.size();
  rep.aggregate["graph_hash"] = hash_hex(graph_hash(g));
  if (o.alpha) {
    auto r = alpha_exact(g, limits);
    io.out << "alpha = " << r.size << ", witness = " << set_string(r.vertices) << "\n";
    rep.aggregate["alpha"] = r.size;
    rep.aggregate["alpha_witness"] = r.vertices;
  }
  if (o.clique) {
    auto w = clique_number(g, limits);
    io.out << "omega = " << w << "\n";
    rep.aggregate["omega"] = w;
  }
  if (o.turan && !g.empty()) {
    auto tb = turan_bound(g, limits);
    auto d = average_degree(g);
    io.out << "turan_bound = " << to_string(tb) << ", average_degree = " << to_string(d) << "\n";
    rep.aggregate["turan_bound"] = to_string(tb);
    rep.aggregate["average_degree"] = to_string(d);
  }
  if (o.hall && !g.empty()) {
    HallRatioOptions ho;
    ho.mode = HallRatioOptions::Mode::Auto;
    ho.seed = Seed{o.seed};
    ho.limits = limits;
    auto r = hall_ratio(g, ho);
    io.out << (r.exact ? "rho = " : "rho >= ") << to_string(r.value) << ", witness = " << set_string(r.witness)
           << (r.exact ? "" : " (sampled lower bound)") << "\n";
    rep.aggregate["hall_ratio"] = to_string(r.value);
    rep.aggregate["hall_ratio_exact"] = r.exact;
    rep.aggregate["hall_ratio_witness"] = r.witness;
  }
  if (o.chif && !g.empty()) {
    ChiFOptions co;
    co.pricing = limits;
    if (o.method == "enum")
      co.method = ChiFOptions::Method::Enumeration;
    else if (o.method != "cg")
      throw PreconditionError("--method must be cg or enum");
    ChiFStats stats;
    auto cert = chi_f_exact(g, co, &stats);
    io.out << "chi_f = " << to_string(cert.value) << "\n";
    rep.aggregate["chi_f"] = to_string(cert.value);
    rep.aggregate["chi_f_rounds"] = stats.rounds;
    rep.aggregate["chi_f_columns"] = stats.columns;
    if (!o.cert_out.empty()) write_text(o.cert_out, certificate_to_json(cert, g).dump(2) + "\n", io);
  }
  return ok;
}

// ---------------------------------------------------------------- pipelines

int cmd_extract(Options& o, Io& io, ExperimentReport& rep) {
  const Graph g = load_graph(o.input, io);
  rep.parameters = {{"input", o.input}, {"a", o.a}, {"q", o.q}, {"retries", o.retries}, {"pair_out", o.pair_out}};
  auto e = extract_semiregular(g, o.a, o.q, Seed{o.seed}, o.retries);
  print_trace(e, io);
  rep.aggregate["trace"] = trace_json(e.trace);
  rep.aggregate["success"] = e.ok();
  if (e.ok()) {
    std::string why;
    const bool valid = check_semiregular(*e.pair, &why);
    rep.aggregate["a_size"] = e.pair->parts.side_a.size();
    rep.aggregate["b_size"] = e.pair->parts.side_b.size();
    rep.aggregate["to_host"] = e.to_host;
    rep.verdicts.push_back({"semiregular", "|A| = q|B| and every A-degree equals a", valid ? "holds" : why, valid});
    if (!o.pair_out.empty()) write_text(o.pair_out, emit_edge_list(e.pair->graph), io);
  }
  return ok;
}

int cmd_thm1(Options& o, Io& io, ExperimentReport& rep) {
  Graph g;
  if (o.gen_n) {
    g = gnp(o.gen_n, parse_rational(o.gen_p), Seed{o.seed}.substream(99));
  } else {
    g = load_graph(o.input, io);
  }
  rep.parameters = {{"input", o.gen_n ? "" : o.input},
                    {"gnp_n", o.gen_n},
                    {"gnp_p", to_string(parse_rational(o.gen_p))},
                    {"c", o.c},
                    {"trials", o.trials},
                    {"parallel", o.parallel},
                    {"node_limit", o.node_limit}};
  auto r = theorem1_pipeline(g, o.c, Seed{o.seed}, o.trials, o.parallel, SearchLimits{o.node_limit});
  io.out << "c = " << r.c << ", a = " << r.a << ", q = " << r.q << ", target chi_f > " << to_string(r.target) << "\n";
  io.out << "average degree = " << to_string(r.average_degree) << " (required " << to_string(r.required_average_degree)
         << ")\n";
  print_trace(r.extraction, io);
  rep.aggregate["average_degree"] = to_string(r.average_degree);
  rep.aggregate["required_average_degree"] = to_string(r.required_average_degree);
  rep.aggregate["extraction"] = trace_json(r.extraction.trace);
  rep.aggregate["extraction_success"] = r.extraction.ok();
  if (r.extraction.ok()) {
    rep.aggregate["b_size"] = r.extraction.pair->parts.side_b.size();
    summarize_trials(r.trials, rep, io);
  }
  rep.verdicts.push_back({"certified", "at least one H_B sample certifies chi_f > c",
                          std::to_string(r.certified) + " of " + std::to_string(r.trials.size()), r.certified > 0});
  return ok;
}

int cmd_sample_hb(Options& o, Io& io, ExperimentReport& rep) {
  rep.parameters = {{"b", o.b},           {"a", o.a},
                    {"q", o.q},           {"trials", o.trials},
                    {"parallel", o.parallel}, {"node_limit", o.node_limit}};
  const Seed seed{o.seed};
  auto pair = random_semiregular(o.b, o.a, o.q, seed.substream(0));
  auto trials = hb_certification_trials(pair, seed.substream(1), o.trials, o.parallel, SearchLimits{o.node_limit});
  // (√q a + q)|B| as an exact threshold string
  io.out << "pair: |A| = " << pair.parts.side_a.size() << ", |B| = " << pair.parts.side_b.size() << ", a = " << o.a
         << ", q = " << o.q << "\n";
  summarize_trials(trials, rep, io);
  const auto certified = rep.aggregate["certified"].get<std::size_t>();
  rep.verdicts.push_back({"certified", "at least one sample has alpha_w(H_B) < (sqrt(q) a + q)|B|",
                          std::to_string(certified) + " of " + std::to_string(trials.size()), certified > 0});
  return ok;
}

// ---------------------------------------------------------------- bounds

json logprob_json(const LogProb& p) {
  if (p.zero) return {{"zero", true}, {"log", nullptr}};
  if (p.infinite()) return {{"zero", false}, {"log", "inf"}};
  return {{"zero", false}, {"log", p.log}};
}

int cmd_bounds(CLI::App& bounds, Options& o, Io& io, ExperimentReport& rep) {
  const std::string kind = bounds.get_subcommands().front()->get_name();
  rep.command = "bounds " + kind;
  rep.parameters["kind"] = kind;
  if (kind == "chernoff") {
    if (o.tail != "lower" && o.tail != "upper") throw PreconditionError("--tail must be lower or upper");
    auto b = o.tail == "lower" ? chernoff_lower(o.mu, o.delta) : chernoff_upper(o.mu, o.delta);
    rep.parameters.update({{"mu", o.mu}, {"delta", o.delta}, {"tail", o.tail}});
    rep.aggregate["bound"] = logprob_json(b);
    io.out << "bound = " << to_string(b) << "\n";
  } else if (kind == "weight") {
    auto w = weight_lemma_bound(o.a, o.q, o.n_b, o.deg);
    rep.parameters.update({{"a", o.a}, {"q", o.q}, {"n", o.n_b}, {"deg", o.deg}});
    rep.aggregate["bound"] = logprob_json(w.bound);
    rep.aggregate["hypothesis"] = w.hypothesis;
    io.out << "bound = " << to_string(w.bound) << ", hypothesis = " << (w.hypothesis ? "true" : "false") << "\n";
  } else if (kind == "events") {
    const EventParams p{o.root, o.big_m, o.small_m, o.s, o.t};
    rep.parameters.update({{"root", o.root}, {"M", o.big_m}, {"m", o.small_m}, {"s", o.s}, {"t", o.t}, {"side", o.side}});
    if (o.side != "both" && o.side != "branch" && o.side != "subdivision")
      throw PreconditionError("--side must be branch, subdivision or both");
    for (auto side : {EventSide::Branch, EventSide::Subdivision}) {
      const char* name = side == EventSide::Branch ? "branch" : "subdivision";
      if (o.side != "both" && o.side != name) continue;
      auto e = event_bound(side, p);
      io.out << name << ": full = " << to_string(e.full) << ", simplified = " << to_string(e.simplified)
             << ", final = " << to_string(e.final_form) << ", target (8M)^-t = " << to_string(e.target)
             << ", simplified within target = " << (e.simplified_within_target ? "yes" : "no")
             << ", final within target = " << (e.final_within_target ? "yes" : "no") << "\n";
      rep.aggregate[name] = {{"full", logprob_json(e.full)},
                             {"simplified", logprob_json(e.simplified)},
                             {"final", logprob_json(e.final_form)},
                             {"target", logprob_json(e.target)},
                             {"simplified_within_target", e.simplified_within_target},
                             {"final_within_target", e.final_within_target}};
    }
  } else if (kind == "threshold") {
    if (o.from < 2 || o.to < o.from) throw PreconditionError("need 2 <= --from <= --to");
    std::vector<std::uint64_t> roots;
    for (auto r = o.from; r <= o.to; ++r) roots.push_back(r);
    rep.parameters.update({{"M", o.big_m}, {"from", o.from}, {"to", o.to}, {"s_cap", union_s_cap}});
    auto t = union_bound_threshold(o.big_m, roots);
    const auto e = std::uint64_t{1} << (2 * o.big_m);
    for (const auto& row : t.rows) {
      io.out << "n = " << row.root << "^" << e << " (log10 n = " << row.log10_n
             << "): branch sum = " << to_string(row.branch_sum) << ", subdivision sum = "
             << to_string(row.subdivision_sum) << (row.passes ? ", both < 1/2" : "") << "\n";
      rep.trials.push_back({{"root", row.root},
                            {"log10_n", row.log10_n},
                            {"branch_sum", logprob_json(row.branch_sum)},
                            {"subdivision_sum", logprob_json(row.subdivision_sum)},
                            {"passes", row.passes},
                            {"b_total_at_most_n", row.b_total_at_most_n},
                            {"enveloped", row.enveloped}});
    }
    if (t.found)
      io.out << "minimal passing n = " << t.minimal_root << "^" << e << "\n";
    else
      io.out << "no candidate passes\n";
    io.out << "monotone = " << (t.monotone ? "yes" : "no") << "\n";
    io.out << "closed form 4(M-1)(8M)^-4 = " << to_string(t.closed_form) << "\n";
    if (t.min_root_b_total_at_most_n)
      io.out << "|B| <= n from n = " << t.min_root_b_total_at_most_n << "^" << e << "\n";
    rep.aggregate = {{"found", t.found},
                     {"minimal_root", t.minimal_root},
                     {"monotone", t.monotone},
                     {"closed_form", to_string(t.closed_form)},
                     {"min_root_b_total_at_most_n", t.min_root_b_total_at_most_n}};
    rep.verdicts.push_back({"union_bound", "some candidate has both side sums < 1/2",
                            t.found ? "root " + std::to_string(t.minimal_root) : "none", t.found});
    rep.verdicts.push_back({"monotone", "side sums non-increasing in n", t.monotone ? "yes" : "no", t.monotone});
  }
  return ok;
}

// ---------------------------------------------------------------- verify

int cmd_verify(Options& o, Io& io, ExperimentReport& rep) {
  const json j = read_json_file(o.file);
  const Graph g = load_graph(o.graph_path, io);
  rep.parameters = {{"file", o.file}, {"graph", o.graph_path}};
  std::vector<std::string> failures;
  std::uint64_t hash = 0;
  std::string type = j.is_object() && j.contains("type") && j["type"].is_string() ? j["type"].get<std::string>() : "";
  if (type == "chi_f_certificate") {
    auto cert = certificate_from_json(j, &hash);
    if (hash != graph_hash(g)) failures.push_back("graph hash mismatch");
    auto r = verify_certificate(g, cert, SearchLimits{o.node_limit});
    failures.insert(failures.end(), r.failures.begin(), r.failures.end());
  } else if (type == "subdivision_witness") {
    auto w = witness_from_json(j, &hash);
    if (hash != graph_hash(g)) failures.push_back("host hash mismatch");
    auto r = verify_witness(g, w);
    failures.insert(failures.end(), r.failures.begin(), r.failures.end());
  } else {
    throw ParseError(0, "'" + o.file + "' is neither a certificate nor a witness record");
  }
  const std::string what = type == "chi_f_certificate" ? "certificate" : "witness";
  for (const auto& f : failures) io.out << what << ": " << f << "\n";
  io.out << what << ": " << (failures.empty() ? "pass" : "fail") << "\n";
  rep.aggregate = {{"type", type}, {"failures", failures}};
  rep.verdicts.push_back({what, "all clauses hold", failures.empty() ? "pass" : failures.front(), failures.empty()});
  if (!failures.empty()) throw CheckFailed{};
  return ok;
}

// ---------------------------------------------------------------- batch

struct Expectation {
  std::string key, op, value;
  std::size_t line = 0;
};

struct Experiment {
  std::string name;
  std::size_t line = 0;
  std::vector<std::pair<std::string, std::string>> keys;
  std::vector<Expectation> expect;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<Experiment> parse_config(const std::string& text) {
  std::vector<Experiment> out;
  std::istringstream in(text);
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(line, "unterminated section header");
      std::string name = trim(s.substr(1, s.size() - 2));
      if (name.rfind("experiment", 0) == 0) name = trim(name.substr(10));
      if (name.empty()) throw ParseError(line, "experiment without a name");
      for (const auto& e : out)
        if (e.name == name) throw ParseError(line, "duplicate experiment '" + name + "'");
      out.push_back({name, line, {}, {}});
      continue;
    }
    if (out.empty()) throw ParseError(line, "entry outside of an [experiment] section");
    if (s.rfind("expect ", 0) == 0) {
      std::istringstream fields(s.substr(7));
      Expectation x;
      x.line = line;
      if (!(fields >> x.key >> x.op >> x.value)) throw ParseError(line, "expected 'expect KEY OP VALUE'");
      if (x.op != ">=" && x.op != "<=" && x.op != "==" && x.op != ">" && x.op != "<" && x.op != "!=")
        throw ParseError(line, "unknown comparison '" + x.op + "'");
      out.back().expect.push_back(x);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    if (key.empty() || key.find_first_of(" \t") != std::string::npos) throw ParseError(line, "malformed key");
    for (const auto& [k, v] : out.back().keys)
      if (k == key) throw ParseError(line, "duplicate key '" + key + "'");
    out.back().keys.emplace_back(key, value);
  }
  for (const auto& e : out) {
    bool has_command = false;
    for (const auto& [k, v] : e.keys) has_command |= k == "command";
    if (!has_command) throw ParseError(e.line, "experiment '" + e.name + "' has no command");
    for (const auto& [k, v] : e.keys)
      if (k == "command" && (v == "batch" || v.empty())) throw ParseError(e.line, "invalid command for '" + e.name + "'");
  }
  return out;
}

bool compare(const json& observed, const Expectation& x, std::string& shown) {
  if (observed.is_null()) {
    shown = "missing";
    return false;
  }
  Rational lhs, rhs;
  try {
    rhs = parse_rational(x.value);
    if (observed.is_boolean())
      lhs = observed.get<bool>() ? 1 : 0;
    else if (observed.is_number_integer() || observed.is_number_unsigned())
      lhs = parse_rational(observed.dump());
    else if (observed.is_number_float())
      lhs = Rational(observed.get<double>());
    else
      lhs = parse_rational(observed.get<std::string>());
  } catch (const std::exception&) {
    shown = observed.dump();
    const std::string s = observed.is_string() ? observed.get<std::string>() : shown;
    return x.op == "==" ? s == x.value : x.op == "!=" ? s != x.value : false;
  }
  shown = observed.is_string() ? observed.get<std::string>() : observed.dump();
  if (x.op == ">=") return lhs >= rhs;
  if (x.op == "<=") return lhs <= rhs;
  if (x.op == ">") return lhs > rhs;
  if (x.op == "<") return lhs < rhs;
  if (x.op == "==") return lhs == rhs;
  return lhs != rhs;
}

int cmd_batch(Options& o, Io& io, ExperimentReport& rep) {
  std::ifstream f(o.file, std::ios::binary);
  if (!f) throw PreconditionError("cannot open config '" + o.file + "'");
  const auto experiments = parse_config(read_all(f));
  rep.parameters = {{"config", o.file}};
  std::size_t passed = 0, skipped = 0, failed = 0, budget = 0;
  int code = ok;
  for (const auto& e : experiments) {
    std::vector<std::string> args;
    std::string command, positional, graph;
    bool has_seed = false;
    for (const auto& [k, v] : e.keys) {
      if (k == "command") command = v;
      else if (k == "args") positional = v;
      else if (k == "graph") graph = v;
      else has_seed |= k == "seed";
    }
    {
      std::istringstream cmd(command + " " + positional);
      for (std::string w; cmd >> w;) args.push_back(w);
    }
    if (!graph.empty()) {
      args.push_back(command == "verify" ? "--graph" : "--input");
      args.push_back(graph);
    }
    for (const auto& [k, v] : e.keys) {
      if (k == "command" || k == "args" || k == "graph") continue;
      args.push_back("--" + k);
      if (v != "true") args.push_back(v);
    }
    if (!has_seed && (command == "thm1" || command == "sample-hb" || command == "extract" || command == "invariants")) {
      args.push_back("--seed");
      args.push_back(std::to_string(o.seed));
    }
    json entry = {{"name", e.name}, {"argv", args}};
    if (!graph.empty() && !std::filesystem::exists(graph)) {
      io.out << "experiment " << e.name << ": skipped (missing graph file '" << graph << "')\n";
      entry["status"] = "skipped";
      entry["reason"] = "missing graph file '" + graph + "'";
      ++skipped;
      code = std::max(code, int(usage_error));
      rep.trials.push_back(entry);
      continue;
    }
    std::ostringstream sub_out, sub_err;
    std::istringstream sub_in;
    Io sub{sub_in, sub_out, sub_err};
    ExperimentReport sub_rep;
    sub_rep.seed = o.seed;
    const int rc = dispatch(args, sub, sub_rep, nullptr);
    entry["exit_code"] = rc;
    entry["report"] = reproducible_view(to_json(sub_rep));
    std::string status = rc == ok ? "ok" : rc == budget_exhausted ? "budget_exceeded" : "error";
    std::vector<std::string> notes;
    if (rc == ok) {
      for (const auto& x : e.expect) {
        const json observed = sub_rep.aggregate.contains(x.key) ? sub_rep.aggregate[x.key] : json();
        std::string shown;
        const bool pass = compare(observed, x, shown);
        sub_rep.verdicts.push_back({x.key, x.key + " " + x.op + " " + x.value, shown, pass});
        notes.push_back(x.key + " = " + shown + (pass ? "" : " (expected " + x.op + " " + x.value + ")"));
        if (!pass) status = "failed";
      }
      entry["report"] = reproducible_view(to_json(sub_rep));
    } else {
      notes.push_back(trim(sub_err.str()));
    }
    entry["status"] = status;
    if (status == "ok") ++passed;
    else if (status == "budget_exceeded") ++budget, code = std::max(code, int(budget_exhausted));
    else if (status == "failed") ++failed, code = std::max(code, int(check_failed));
    else code = std::max(code, int(usage_error));
    io.out << "experiment " << e.name << ": " << status;
    if (sub_rep.aggregate.contains("certified_fraction"))
      io.out << ", certified_fraction = " << sub_rep.aggregate["certified_fraction"].dump();
    for (const auto& n : notes)
      if (!n.empty()) io.out << "; " << n;
    io.out << "\n";
    rep.trials.push_back(entry);
  }
  io.out << experiments.size() << " experiments: " << passed << " ok, " << failed << " failed, " << skipped
         << " skipped";
  if (budget) io.out << ", " << budget << " over budget";
  io.out << "\n";
  rep.aggregate = {{"experiments", experiments.size()},
                   {"ok", passed},
                   {"failed", failed},
                   {"skipped", skipped},
                   {"budget_exceeded", budget}};
  return code;
}

// ---------------------------------------------------------------- dispatch

int dispatch(const std::vector<std::string>& args, Io& io, ExperimentReport& rep, std::string* json_path) {
  Options o;
  o.seed = rep.seed;
  CLI::App app{"Hall ratio and fractional chromatic number toolkit", tool_name};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);
  std::string json_out;
  app.add_option("--json", json_out, "write the experiment report to this path")->type_name("PATH");
  app.fallthrough();

  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "random seed")->capture_default_str(); };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input,-i", o.input, "graph file (edge list or DIMACS), - for stdin")->capture_default_str();
  };
  auto add_limit = [&](CLI::App* sub) {
    sub->add_option("--node-limit", o.node_limit, "search node budget")->capture_default_str();
  };

  auto* gen = app.add_subcommand("gen", "generate a graph as an edge list");
  gen->require_subcommand(1);
  gen->add_option("--output,-o", o.output, "output path, - for stdout")->capture_default_str();
  gen->fallthrough();
  auto* g_kneser = gen->add_subcommand("kneser", "Kneser graph K_{a:b}");
  g_kneser->add_option("a", o.kneser_a)->required();
  g_kneser->add_option("b", o.kneser_b)->required();
  auto* g_myc = gen->add_subcommand("mycielski", "Mycielskian of the input, or the k-th graph of the series from K_2");
  g_myc->add_option("k", o.mycielski_steps, "series index (2 = K_2, 3 = C_5, 4 = Groetzsch)");
  add_input(g_myc);
  auto* g_join = gen->add_subcommand("join", "join of k copies of the input");
  g_join->add_option("k", o.join_k)->required();
  add_input(g_join);
  auto* g_sub = gen->add_subcommand("subdivide", "1-subdivision of the input");
  add_input(g_sub);
  g_sub->add_option("--witness-out", o.witness_out, "write the embedding witness here");
  auto* g_gnp = gen->add_subcommand("gnp", "Erdos-Renyi G(n, p)");
  g_gnp->add_option("n", o.gnp_n)->required();
  g_gnp->add_option("p", o.gnp_p, "probability, e.g. 1/2 or 0.25")->required();
  add_seed(g_gnp);
  auto* g_layer = gen->add_subcommand("layered", "layered graph G_{n,M}");
  g_layer->add_option("n", o.layered_n)->required();
  g_layer->add_option("M", o.layered_m)->required();
  add_seed(g_layer);
  auto* g_semi = gen->add_subcommand("semiregular", "random semiregular pair");
  g_semi->add_option("--b", o.b)->required();
  g_semi->add_option("--a", o.a)->required();
  g_semi->add_option("--q", o.q)->required();
  add_seed(g_semi);
  for (auto* s : gen->get_subcommands()) s->fallthrough();

  auto* inv = app.add_subcommand("invariants", "exact invariants of the input graph (all when no flag is given)");
  add_input(inv);
  add_limit(inv);
  add_seed(inv);
  inv->add_flag("--alpha", o.alpha, "independence number");
  inv->add_flag("--hall-ratio", o.hall, "Hall ratio");
  inv->add_flag("--chi-f", o.chif, "fractional chromatic number");
  inv->add_flag("--clique", o.clique, "clique number");
  inv->add_flag("--turan", o.turan, "n/alpha - 1 against the average degree");
  inv->add_option("--cert-out", o.cert_out, "write the chi_f certificate here");
  inv->add_option("--method", o.method, "chi_f method: cg or enum")->capture_default_str();

  auto* ext = app.add_subcommand("extract", "extract a semiregular pair");
  add_input(ext);
  add_seed(ext);
  ext->add_option("--a", o.a)->required();
  ext->add_option("--q", o.q)->required();
  ext->add_option("--retries", o.retries)->capture_default_str();
  ext->add_option("--pair-out", o.pair_out, "write the pair as an edge list (A first, then B)");

  auto* thm = app.add_subcommand("thm1", "extraction plus H_B certification with a = 2c, q = 4c^2");
  add_input(thm);
  add_seed(thm);
  add_limit(thm);
  thm->add_option("--c", o.c)->required();
  thm->add_option("--trials", o.trials)->capture_default_str();
  thm->add_option("--parallel", o.parallel)->capture_default_str();
  thm->add_option("--gnp-n", o.gen_n, "generate G(n, p) instead of reading a graph");
  thm->add_option("--gnp-p", o.gen_p)->capture_default_str();

  auto* hb = app.add_subcommand("sample-hb", "H_B samples from a random semiregular pair");
  add_seed(hb);
  add_limit(hb);
  hb->add_option("--b", o.b)->required();
  hb->add_option("--a", o.a)->required();
  hb->add_option("--q", o.q)->required();
  hb->add_option("--trials", o.trials)->capture_default_str();
  hb->add_option("--parallel", o.parallel)->capture_default_str();

  auto* bnd = app.add_subcommand("bounds", "evaluate probability bounds");
  bnd->require_subcommand(1);
  bnd->fallthrough();
  auto* b_ch = bnd->add_subcommand("chernoff", "Chernoff tail");
  b_ch->add_option("--mu", o.mu)->required();
  b_ch->add_option("--delta", o.delta)->required();
  b_ch->add_option("--tail", o.tail, "lower or upper")->capture_default_str();
  auto* b_w = bnd->add_subcommand("weight", "weight-lemma bound for a set Z of B");
  b_w->add_option("--a", o.a)->required();
  b_w->add_option("--q", o.q)->required();
  b_w->add_option("--n", o.n_b, "|B|")->required();
  b_w->add_option("--deg", o.deg, "deg_H(Z)")->required();
  auto* b_ev = bnd->add_subcommand("events", "event bounds for one (m, s, t)");
  b_ev->add_option("--root", o.root, "r with n = r^(4^M)")->required();
  b_ev->add_option("--M", o.big_m)->capture_default_str();
  b_ev->add_option("--m", o.small_m)->capture_default_str();
  b_ev->add_option("--s", o.s)->capture_default_str();
  b_ev->add_option("--t", o.t)->capture_default_str();
  b_ev->add_option("--side", o.side, "branch, subdivision or both")->capture_default_str();
  auto* b_th = bnd->add_subcommand("threshold", "union-bound threshold over n = r^(4^M), r in [from, to]");
  b_th->add_option("--M", o.big_m)->capture_default_str();
  b_th->add_option("--from", o.from)->capture_default_str();
  b_th->add_option("--to", o.to)->capture_default_str();
  for (auto* s : bnd->get_subcommands()) s->fallthrough();

  auto* ver = app.add_subcommand("verify", "check a certificate or witness file against a graph");
  ver->add_option("file", o.file)->required();
  ver->add_option("--graph", o.graph_path, "graph file, - for stdin")->required();
  add_limit(ver);

  auto* bat = app.add_subcommand("batch", "run the experiments of a config file");
  bat->add_option("config", o.file)->required();
  add_seed(bat);

  std::vector<const char*> argv{tool_name};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, io.out, io.err);
    return rc == 0 ? ok : usage_error;
  }
  if (json_path) *json_path = json_out;
  rep.argv = args;
  rep.seed = o.seed;

  try {
    auto* sub = app.get_subcommands().front();
    rep.command = sub->get_name();
    if (sub == gen) return cmd_gen(*gen, o, io, rep);
    if (sub == inv) return cmd_invariants(o, io, rep);
    if (sub == ext) return cmd_extract(o, io, rep);
    if (sub == thm) return cmd_thm1(o, io, rep);
    if (sub == hb) return cmd_sample_hb(o, io, rep);
    if (sub == bnd) return cmd_bounds(*bnd, o, io, rep);
    if (sub == ver) return cmd_verify(o, io, rep);
    return cmd_batch(o, io, rep);
  } catch (const CheckFailed&) {
    return check_failed;
  } catch (const BudgetExceeded& e) {
    io.err << "error: budget exhausted: " << e.what() << "\n";
    return budget_exhausted;
  } catch (const ParseError& e) {
    io.err << "error: malformed input: " << e.what() << "\n";
    return usage_error;
  } catch (const std::invalid_argument& e) {
    io.err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::length_error& e) {
    io.err << "error: " << e.what() << "\n";
    return usage_error;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Io io{in, out, err};
  ExperimentReport rep;
  try {
    rep.seed = default_seed();
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
  const auto start = std::chrono::steady_clock::now();
  rep.timestamp = utc_timestamp();
  std::string json_path;
  int rc;
  try {
    rc = dispatch(args, io, rep, &json_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return check_failed;
  }
  rep.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!json_path.empty() && (rc == ok || rc == check_failed || !rep.command.empty())) {
    std::ofstream f(json_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << json_path << "'\n";
      return usage_error;
    }
    f << to_json(rep).dump(2) << "\n";
  }
  return rc;
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, in, out, err);
}

}  // namespace halllab::cli
