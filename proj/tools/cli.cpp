#include "cli.hpp"

#include "cwbound/certificate.hpp"
#include "cwbound/code_oracle.hpp"
#include "cwbound/engine.hpp"
#include "cwbound/tbound.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace cwbound::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int n = 0, d = 0, w = -1;
  bool binary = false;
  std::string families = "delsarte,t-cap,pairs,d-pairs,columns";
  std::string ks;
  std::vector<std::string> tbounds;
  std::string known_bound;
  std::string format = "human";
  std::string certificate_path;
  std::int64_t cross_check = 0;
  bool no_johnson = false;
  std::size_t max_descent = 10000;
  std::string output;
  unsigned jobs = 1;
  std::string n_range, d_range, w_range;
  std::string verify_path;
  std::string mode = "exhaustive";
  std::string doubly;
  std::uint64_t seed = 1;
  int w1 = 0, n1 = 0, w2 = 0, n2 = 0;
};

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(what + ": '" + item + "' is not an integer");
    }
  }
  return out;
}

// "a", "a..b" or "a,b,c"; an empty string means no values.
std::vector<int> parse_range(const std::string& text, const std::string& what) {
  if (text.empty()) return {};
  const auto dots = text.find("..");
  if (dots == std::string::npos) return parse_int_list(text, what);
  const auto lo = parse_int_list(text.substr(0, dots), what);
  const auto hi = parse_int_list(text.substr(dots + 2), what);
  if (lo.size() != 1 || hi.size() != 1) throw UsageError(what + ": bad range '" + text + "'");
  std::vector<int> out;
  for (int v = lo[0]; v <= hi[0]; ++v) out.push_back(v);
  return out;
}

TBoundTable load_tables(const std::vector<std::string>& paths) {
  TBoundTable table = TBoundTable::seed();
  for (const auto& path : paths) {
    try {
      table.merge(TBoundTable::load(path));
    } catch (const TableError& e) {
      throw DataError(e.what());
    }
  }
  return table;
}

EngineOptions engine_options(const Config& c) {
  EngineOptions o;
  try {
    o.families = parse_families(c.families);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!c.ks.empty()) o.column_ks = parse_int_list(c.ks, "--k");
  if (!c.known_bound.empty()) {
    try {
      o.known_bound = parse_integer(c.known_bound);
    } catch (const std::invalid_argument&) {
      throw UsageError("--known-bound: '" + c.known_bound + "' is not an integer");
    }
    if (*o.known_bound < 0) throw UsageError("--known-bound must be nonnegative");
  }
  o.use_johnson = !c.no_johnson;
  o.max_descent_steps = c.max_descent;
  return o;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw DataError("failed writing '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json opt_int(const std::optional<Integer>& v) { return v ? json(v->get_str()) : json(nullptr); }

json result_json(const BoundResult& r) {
  json params = nullptr;
  if (r.params) params = {{"n", r.params->n}, {"d", r.params->d}, {"w", r.params->w}};
  json lps = json::array();
  for (const auto& rec : r.lps) {
    json lp = {{"role", rec.role},
               {"instance", rec.instance},
               {"assumed_size", rec.assumed_size ? json(*rec.assumed_size) : json(nullptr)},
               {"status", to_string(rec.solution.status)},
               {"constraints", rec.problem.constraint_count()},
               {"provenance", rec.problem.provenance},
               {"pivots", rec.solution.pivots}};
    lp["optimum"] = rec.solution.status == LPStatus::Optimal ? json(to_string(rec.solution.optimum)) : json(nullptr);
    lps.push_back(std::move(lp));
  }
  json t = json::array();
  for (const auto& e : r.t_entries) {
    t.push_back({{"key", to_string(e.key)},
                 {"bound", e.bound.get_str()},
                 {"source", to_string(e.source)},
                 {"provenance", e.provenance}});
  }
  return {{"query", r.query},
          {"params", params},
          {"bound", r.bound.get_str()},
          {"method", r.method},
          {"derivation", r.derivation},
          {"lps", lps},
          {"t_entries", t},
          {"assumed_upper_bound", opt_int(r.assumed_bound)},
          {"assumed_source", r.assumed_source}};
}

// Human rendering reads only the JSON document of the same run.
void print_human(const json& j, std::ostream& out) {
  out << j["query"].get<std::string>() << " <= " << j["bound"].get<std::string>() << "\n";
  out << "  method: " << j["method"].get<std::string>() << "\n";
  if (!j["params"].is_null()) {
    out << "  canonical: (" << j["params"]["n"] << "," << j["params"]["d"] << "," << j["params"]["w"] << ")\n";
  }
  if (!j["assumed_upper_bound"].is_null()) {
    out << "  starting bound: " << j["assumed_upper_bound"].get<std::string>() << " ("
        << j["assumed_source"].get<std::string>() << ")\n";
  }
  if (!j["derivation"].empty()) {
    out << "  derivation:\n";
    for (const auto& s : j["derivation"]) out << "    " << s.get<std::string>() << "\n";
  }
  if (!j["t_entries"].empty()) {
    out << "  T entries:\n";
    for (const auto& e : j["t_entries"]) {
      out << "    " << e["key"].get<std::string>() << " <= " << e["bound"].get<std::string>() << " ["
          << e["source"].get<std::string>();
      if (!e["provenance"].get<std::string>().empty()) out << ": " << e["provenance"].get<std::string>();
      out << "]\n";
    }
  }
  if (!j["lps"].empty()) {
    out << "  LPs:\n";
    for (const auto& lp : j["lps"]) {
      out << "    " << lp["role"].get<std::string>();
      if (!lp["assumed_size"].is_null()) out << " M=" << lp["assumed_size"];
      out << ": " << lp["status"].get<std::string>();
      if (!lp["optimum"].is_null()) out << " " << lp["optimum"].get<std::string>();
      out << " (" << lp["constraints"] << " constraints)\n";
    }
  }
  if (j.contains("cross_check")) {
    const auto& c = j["cross_check"];
    out << "  cross-check at M=" << c["size"] << ": " << c["status"].get<std::string>();
    if (!c["optimum"].is_null()) {
      out << " optimum " << c["optimum"].get<std::string>() << ", floor+1 = " << c["lp_value"].get<std::string>();
    }
    out << " -> bound " << c["bound"].get<std::string>() << "\n";
  }
}

int cmd_bound(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.format != "human" && c.format != "json" && c.format != "csv") throw UsageError("unknown format " + c.format);
  BoundEngine engine(load_tables(c.tbounds), engine_options(c));
  BoundResult result;
  try {
    if (c.binary) {
      result = engine.binary_bound(c.n, c.d, engine.options().known_bound);
    } else {
      if (c.w < 0) throw UsageError("--w is required unless --binary is given");
      result = engine.bound(c.n, c.d, c.w);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  json j = result_json(result);
  if (c.cross_check > 0) {
    if (!result.params) throw UsageError("--cross-check needs a query that reaches the LP");
    if (c.cross_check < 2) throw UsageError("--cross-check size must be at least 2");
    const CrossCheck cc = engine.cross_check(*result.params, c.cross_check);
    j["cross_check"] = {{"size", c.cross_check},
                        {"status", to_string(cc.record.solution.status)},
                        {"optimum", cc.record.solution.status == LPStatus::Optimal ? json(to_string(cc.optimum))
                                                                                   : json(nullptr)},
                        {"lp_value", cc.lp_value.get_str()},
                        {"bound", cc.bound.get_str()}};
    result.lps.push_back(cc.record);
  }

  if (!c.certificate_path.empty()) {
    const Certificate cert = make_certificate(result);
    const VerifyReport report = verify_certificate(cert);
    if (!report.ok) throw InternalError("emitted certificate fails verification: " + report.message);
    write_text(c.certificate_path, serialize_certificate(cert));
  }

  std::ostringstream text;
  if (c.format == "json") {
    text << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    text << "query,n,d,w,bound,method\n";
    text << "\"" << result.query << "\"," << c.n << "," << c.d << ",";
    if (!c.binary) text << c.w;
    text << "," << result.bound.get_str() << "," << result.method << "\n";
  } else {
    print_human(j, text);
  }
  if (c.output.empty()) {
    out << text.str();
  } else {
    write_text(c.output, text.str());
  }
  (void)err;
  return kOk;
}

struct Cell {
  int n = 0, d = 0, w = 0;
  std::string bound;
  std::string method;
  std::string error;
};

int cmd_table(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.format != "human" && c.format != "json" && c.format != "csv") throw UsageError("unknown format " + c.format);
  if (c.jobs < 1) throw UsageError("--jobs must be at least 1");
  const auto ns = parse_range(c.n_range, "--n");
  const auto ds = parse_range(c.d_range, "--d");
  const bool all_w = c.w_range.empty() || c.w_range == "all";
  const auto ws = all_w ? std::vector<int>{} : parse_range(c.w_range, "--w");
  const TBoundTable table = load_tables(c.tbounds);
  const EngineOptions options = engine_options(c);

  std::vector<Cell> cells;
  for (int n : ns) {
    for (int d : ds) {
      if (all_w) {
        for (int w = 0; w <= n; ++w) cells.push_back({n, d, w, {}, {}, {}});
      } else {
        for (int w : ws) {
          if (w <= n) cells.push_back({n, d, w, {}, {}, {}});
        }
      }
    }
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> internal{false};
  auto worker = [&] {
    BoundEngine engine(table, options);
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      Cell& cell = cells[i];
      try {
        const BoundResult r = engine.bound(cell.n, cell.d, cell.w);
        cell.bound = r.bound.get_str();
        cell.method = r.method;
      } catch (const InternalError& e) {
        cell.error = e.what();
        internal = true;
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers = std::min<std::size_t>(c.jobs, std::max<std::size_t>(cells.size(), 1));
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream text;
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& cell : cells) {
      json row = {{"n", cell.n}, {"d", cell.d}, {"w", cell.w}};
      if (cell.error.empty()) {
        row["bound"] = cell.bound;
        row["method"] = cell.method;
      } else {
        row["error"] = cell.error;
      }
      rows.push_back(std::move(row));
    }
    text << rows.dump(2) << "\n";
  } else if (c.format == "csv") {
    text << "n,d,w,bound,method\n";
    for (const auto& cell : cells) {
      text << cell.n << "," << cell.d << "," << cell.w << ",";
      if (cell.error.empty()) {
        text << cell.bound << "," << cell.method << "\n";
      } else {
        text << ",FAILED\n";
      }
    }
  } else {
    text << std::setw(4) << "n" << std::setw(4) << "d" << std::setw(4) << "w" << std::setw(14) << "bound"
         << "  method\n";
    for (const auto& cell : cells) {
      text << std::setw(4) << cell.n << std::setw(4) << cell.d << std::setw(4) << cell.w << std::setw(14)
           << (cell.error.empty() ? cell.bound : "-") << "  " << (cell.error.empty() ? cell.method : "FAILED")
           << "\n";
    }
  }
  if (c.output.empty()) {
    out << text.str();
  } else {
    write_text(c.output, text.str());
  }

  std::size_t failed = 0;
  for (const auto& cell : cells) {
    if (!cell.error.empty()) {
      ++failed;
      err << "cell (" << cell.n << "," << cell.d << "," << cell.w << ") failed: " << cell.error << "\n";
    }
  }
  if (failed == 0) return kOk;
  return internal ? kInternal : kData;
}

int cmd_verify(const Config& c, std::ostream& out, std::ostream& err) {
  const std::string text = read_text(c.verify_path);
  VerifyReport report;
  try {
    report = verify_certificate_text(text);
  } catch (const CertificateParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kData;
  }
  if (!report.ok) {
    err << "invalid certificate: " << report.message << "\n";
    return kData;
  }
  out << report.message << "\n";
  return kOk;
}

CodeShape oracle_shape(const Config& c) {
  try {
    if (!c.doubly.empty()) {
      const auto v = parse_int_list(c.doubly, "--doubly");
      if (v.size() != 4) throw UsageError("--doubly expects w1,n1,w2,n2");
      return CodeShape::doubly(v[0], v[1], v[2], v[3]);
    }
    if (c.binary) return CodeShape::binary(c.n);
    if (c.w < 0) throw UsageError("--w is required unless --binary or --doubly is given");
    return CodeShape::constant_weight(c.n, c.w);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_oracle(const Config& c, std::ostream& out, std::ostream&) {
  if (c.d < 1) throw UsageError("--d must be positive");
  const CodeShape shape = oracle_shape(c);
  std::optional<ExplicitCode> code;
  try {
    if (c.mode == "exhaustive") {
      code = exhaustive_max(shape, c.d).witness;
    } else if (c.mode == "greedy") {
      code = greedy_lower_bound(shape, c.d, c.seed);
    } else {
      throw UsageError("--mode must be exhaustive or greedy");
    }
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }

  if (!c.output.empty()) write_text(c.output, serialize_witness(*code));
  if (c.format == "json") {
    json words = json::array();
    std::istringstream lines(serialize_witness(*code));
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) words.push_back(line);
    json dist = json::object();
    for (const auto& [i, a] : distance_distribution(*code)) {
      if (a != 0) dist[std::to_string(i)] = to_string(a);
    }
    out << json{{"shape", shape.kind_name()},
                {"n", shape.n},
                {"d", c.d},
                {"mode", c.mode},
                {"size", code->size()},
                {"distance_distribution", dist},
                {"codewords", words}}
               .dump(2)
        << "\n";
  } else {
    out << c.mode << " " << shape.kind_name() << " code, n=" << shape.n << " d=" << c.d;
    if (shape.kind == CodeKind::ConstantWeight) out << " w=" << shape.w;
    out << ": size " << code->size() << "\n";
    if (c.output.empty()) {
      std::istringstream lines(serialize_witness(*code));
      std::string line;
      std::getline(lines, line);
      while (std::getline(lines, line)) out << "  " << line << "\n";
    }
  }
  return kOk;
}

int cmd_tcheck(const Config& c, std::ostream& out, std::ostream&) {
  DoublyParams p;
  try {
    p = DoublyParams::make(c.w1, c.n1, c.w2, c.n2, c.d);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const TLookup t = lookup_t(p, load_tables(c.tbounds));
  if (c.format == "json") {
    out << json{{"query", to_string(p)},
                {"canonical", to_string(t.key)},
                {"bound", t.bound.get_str()},
                {"source", to_string(t.source)},
                {"provenance", t.provenance}}
               .dump(2)
        << "\n";
  } else {
    out << to_string(p) << " <= " << t.bound.get_str() << "\n";
    out << "  canonical: " << to_string(t.key) << "\n";
    out << "  source: " << to_string(t.source);
    if (!t.provenance.empty()) out << " (" << t.provenance << ")";
    out << "\n";
  }
  return kOk;
}

void add_engine_flags(CLI::App* cmd, Config& c) {
  cmd->add_option("--families", c.families, "Comma-separated constraint families")->capture_default_str();
  cmd->add_option("--k", c.ks, "Comma-separated k values for column constraints (default 1..min(n,8))");
  cmd->add_option("--tbounds", c.tbounds, "Extra T-bound table (repeatable; merged by minimum)");
  cmd->add_flag("--no-johnson", c.no_johnson, "Disable the Johnson recursion");
  cmd->add_option("--max-descent", c.max_descent, "Maximum number of descent steps")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Upper bounds on constant-weight and binary codes"};
  app.require_subcommand(1);

  auto* bound = app.add_subcommand("bound", "Bound A(n,d,w), or A(n,d) with --binary");
  bound->add_option("--n", c.n, "Length")->required();
  bound->add_option("--d", c.d, "Minimum distance")->required();
  bound->add_option("--w", c.w, "Weight");
  bound->add_flag("--binary", c.binary, "Unrestricted binary codes");
  add_engine_flags(bound, c);
  bound->add_option("--known-bound", c.known_bound, "Externally proven upper bound to start from");
  bound->add_option("--format", c.format, "human, json or csv")->capture_default_str();
  bound->add_option("--emit-certificate", c.certificate_path, "Write a JSON certificate to this path");
  bound->add_option("--cross-check", c.cross_check, "Also run the fixed-size maximization LP at this M");
  bound->add_option("--output", c.output, "Write the report here instead of stdout");

  auto* table = app.add_subcommand("table", "Grid of bounds over (n,d,w) ranges");
  table->add_option("--n", c.n_range, "Lengths: a, a..b or a,b,c")->required();
  table->add_option("--d", c.d_range, "Distances: a, a..b or a,b,c")->required();
  table->add_option("--w", c.w_range, "Weights (default all)");
  add_engine_flags(table, c);
  table->add_option("--format", c.format, "human, json or csv")->capture_default_str();
  table->add_option("--output", c.output, "Output file");
  table->add_option("--jobs", c.jobs, "Worker threads")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Re-check a certificate file");
  verify->add_option("certificate", c.verify_path, "Certificate JSON")->required();

  auto* oracle = app.add_subcommand("oracle", "Exhaustive maximum or greedy code for small parameters");
  oracle->add_option("--n", c.n, "Length");
  oracle->add_option("--d", c.d, "Minimum distance")->required();
  oracle->add_option("--w", c.w, "Weight");
  oracle->add_flag("--binary", c.binary, "Unrestricted binary codes");
  oracle->add_option("--doubly", c.doubly, "Doubly-constant-weight shape w1,n1,w2,n2");
  oracle->add_option("--mode", c.mode, "exhaustive or greedy")->capture_default_str();
  oracle->add_option("--seed", c.seed, "Seed for greedy mode")->capture_default_str();
  oracle->add_option("--format", c.format, "human or json")->capture_default_str();
  oracle->add_option("--output", c.output, "Write the witness code to this file");

  auto* tcheck = app.add_subcommand("tcheck", "Look up T(w1,n1,w2,n2,d)");
  tcheck->add_option("--w1", c.w1)->required();
  tcheck->add_option("--n1", c.n1)->required();
  tcheck->add_option("--w2", c.w2)->required();
  tcheck->add_option("--n2", c.n2)->required();
  tcheck->add_option("--d", c.d)->required();
  tcheck->add_option("--tbounds", c.tbounds, "Extra T-bound table (repeatable; merged by minimum)");
  tcheck->add_option("--format", c.format, "human or json")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*bound) return cmd_bound(c, out, err);
    if (*table) return cmd_table(c, out, err);
    if (*verify) return cmd_verify(c, out, err);
    if (*oracle) return cmd_oracle(c, out, err);
    if (*tcheck) return cmd_tcheck(c, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kData;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace cwbound::cli
