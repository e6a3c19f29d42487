#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "line_act/cantor.hpp"
#include "line_act/classify.hpp"
#include "line_act/dynamics.hpp"
#include "line_act/error.hpp"
#include "line_act/extension.hpp"
#include "line_act/gallery.hpp"
#include "line_act/homeo_text.hpp"
#include "line_act/spec_file.hpp"

namespace lineact::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchema = "line-act/1";

struct Shared {
  std::string gallery;
  std::string spec;
  std::string alpha;
  std::optional<long> n;
  std::optional<long> k;
  std::string format;
  unsigned precision = kDefaultPrecision;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string output;
};

/// What a command produces: a JSON result and, for CSV output, a table.
struct Report {
  int status = 0;
  json config = json::object();
  json result = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string approx(const RealNum& x) {
  std::ostringstream os;
  os.precision(17);
  os << x.to_double();
  return os.str();
}

std::string brief(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json number(const RealNum& x) { return json{{"value", x.to_string()}, {"approx", x.to_double()}}; }

RealNum parse_number(const std::string& text) { return RealNum::parse(text); }

Interval parse_open(const std::vector<std::string>& ends, const char* what) {
  if (ends.size() != 2) throw Error(ErrorCode::BadParameter, std::string(what) + " needs two endpoints");
  const RealNum lo = parse_number(ends[0]);
  const RealNum hi = parse_number(ends[1]);
  if (!certainly_less(lo, hi)) throw Error(ErrorCode::WindowDegenerate, std::string(what) + " must have lo < hi");
  return Interval::open(lo, hi);
}

Interval parse_closed(const std::vector<std::string>& ends, const char* what) {
  const Interval i = parse_open(ends, what);
  return i.closure();
}

std::string escape_csv(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string quoted = "\"";
  for (char c : cell) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void write_report(std::ostream& out, const std::string& command, const std::string& format, const Report& r) {
  if (format == "csv") {
    out << "# schema: " << kSchema << "\n";
    out << "# command: " << command << "\n";
    out << "# timestamp: " << utc_timestamp() << "\n";
    out << "# config: " << r.config.dump() << "\n";
    for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << escape_csv(r.columns[i]);
    out << "\n";
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << escape_csv(row[i]);
      out << "\n";
    }
    return;
  }
  json doc;
  doc["schema"] = kSchema;
  doc["command"] = command;
  doc["timestamp"] = utc_timestamp();
  doc["config"] = r.config;
  doc["status"] = r.status;
  doc["result"] = r.result;
  out << doc.dump(2) << "\n";
}

class Cli {
 public:
  Cli() : app_("Explore group actions on the real line by homeomorphisms.", "line-act") {
    app_.require_subcommand(1);
    app_.set_version_flag("--version", "line-act 0.1.0");
    add_eval();
    add_orbit();
    add_transitive();
    add_wander_check();
    add_wander_find();
    add_cantor();
    add_classify();
    add_relations();
    add_extend();
    add_gallery_list();
  }

  int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app_.parse(reversed);
    } catch (const CLI::ParseError& e) {
      // Help and version requests exit 0; usage errors are errors.
      return app_.exit(e, out, err) == 0 ? 0 : 2;
    }
    CLI::App* chosen = app_.get_subcommands().front();
    const std::string command = chosen->get_name();
    try {
      PrecisionScope scope(shared_.precision);
      Report report = handlers_.at(command)();
      report.config = with_shared(command, std::move(report.config));
      const std::string format = shared_.format.empty() ? default_format(command) : shared_.format;
      if (!shared_.output.empty()) {
        std::ofstream file(shared_.output);
        if (!file) throw Error(ErrorCode::BadParameter, "cannot open output file '" + shared_.output + "'");
        write_report(file, command, format, report);
      } else {
        write_report(out, command, format, report);
      }
      return report.status;
    } catch (const Error& e) {
      err << "line-act: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      err << "line-act: internal error: " << e.what() << "\n";
      return 2;
    }
  }

 private:
  static std::string default_format(const std::string& command) { return command == "orbit" ? "csv" : "json"; }

  json with_shared(const std::string& command, json specific) const {
    json config;
    config["command"] = command;
    if (uses_action_.count(command) && !action_source().empty()) config["action"] = action_source();
    config["precision"] = shared_.precision;
    config["format"] = shared_.format.empty() ? default_format(command) : shared_.format;
    config["seed"] = shared_.seed;
    config["workers"] = shared_.workers;
    for (auto it = specific.begin(); it != specific.end(); ++it) config[it.key()] = it.value();
    return config;
  }

  std::string action_source() const {
    if (!shared_.spec.empty()) return shared_.spec;
    if (shared_.gallery.empty()) return "";
    std::string id = "gallery:" + shared_.gallery;
    std::vector<std::string> params;
    if (!shared_.alpha.empty()) params.push_back("alpha=" + shared_.alpha);
    if (shared_.n) params.push_back("n=" + std::to_string(*shared_.n));
    if (shared_.k) params.push_back("k=" + std::to_string(*shared_.k));
    for (std::size_t i = 0; i < params.size(); ++i) id += (i ? "," : ":") + params[i];
    return id;
  }

  Action load() const {
    if (!shared_.spec.empty() && !shared_.gallery.empty()) {
      throw Error(ErrorCode::BadParameter, "give either --gallery or --spec, not both");
    }
    if (!shared_.spec.empty()) return load_action(shared_.spec);
    if (shared_.gallery.empty()) throw Error(ErrorCode::BadParameter, "an action is required (--gallery or --spec)");
    GalleryParams params;
    if (!shared_.alpha.empty()) params.alpha = parse_number(shared_.alpha);
    params.n = shared_.n;
    params.k = shared_.k;
    return gallery(shared_.gallery, params);
  }

  CLI::App* subcommand(const std::string& name, const std::string& description, bool uses_action) {
    CLI::App* sub = app_.add_subcommand(name, description);
    if (uses_action) {
      uses_action_.insert(name);
      sub->add_option("--gallery", shared_.gallery, "Gallery action name (see gallery-list)");
      sub->add_option("--spec", shared_.spec, "Action file, or gallery:<name>:<params>");
      sub->add_option("--alpha", shared_.alpha, "Translation length for ex_1_2 (e.g. sqrt2)");
      sub->add_option("--n", shared_.n, "Parameter n for ex_1_3");
      sub->add_option("--k", shared_.k, "Parameter k for ex_1_4");
    }
    sub->add_option("--format", shared_.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--precision", shared_.precision, "Working precision in bits")
        ->check(CLI::Range(Precision{16}, kPrecisionCeiling));
    sub->add_option("--seed", shared_.seed, "Seed for randomized sweeps");
    sub->add_option("--workers", shared_.workers, "Worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--output", shared_.output, "Write the result to this file instead of stdout");
    return sub;
  }

  void add_eval() {
    struct Opts {
      std::string expr;
      std::string word;
      std::vector<std::string> points;
      std::string tol;
    };
    auto o = std::make_shared<Opts>();
    CLI::App* sub = subcommand("eval", "Evaluate a homeomorphism expression or a group word at points", true);
    sub->add_option("--expr", o->expr, "Homeomorphism expression, e.g. compose(affine(2,0),oddpower(3,fwd))");
    sub->add_option("--word", o->word, "Group word for the chosen action, e.g. \"b^-1 a b\"");
    sub->add_option("--point", o->points, "Evaluation points")->required()->expected(1, -1);
    sub->add_option("--tol", o->tol, "Raise precision until the error bound is below this");
    handlers_["eval"] = [this, o] {
      if (o->expr.empty() == o->word.empty()) throw Error(ErrorCode::BadParameter, "give exactly one of --expr or --word");
      HomeoExpr h;
      if (!o->expr.empty()) {
        h = parse_homeo(o->expr);
      } else {
        const Action act = load();
        h = realize(act, parse_word(act.presentation(), o->word));
      }
      Report r;
      if (!o->expr.empty()) r.config["expr"] = o->expr;
      if (!o->word.empty()) r.config["word"] = o->word;
      r.config["points"] = o->points;
      if (!o->tol.empty()) r.config["tol"] = o->tol;
      const std::optional<RealNum> tol = o->tol.empty() ? std::nullopt : std::optional(parse_number(o->tol));
      r.result["map"] = h.to_string();
      r.result["values"] = json::array();
      r.columns = {"x", "value", "approx", "error", "exact"};
      for (const auto& text : o->points) {
        const RealNum x = parse_number(text);
        const RealNum y = tol ? eval(h, x, *tol) : eval(h, x);
        r.result["values"].push_back({{"x", x.to_string()},
                                      {"value", y.to_string()},
                                      {"approx", y.to_double()},
                                      {"error", y.error_double()},
                                      {"exact", y.is_exact()}});
        r.rows.push_back({x.to_string(), y.to_string(), approx(y), brief(y.error_double()),
                          y.is_exact() ? "true" : "false"});
      }
      return r;
    };
  }

  void add_orbit() {
    struct Opts {
      std::string point = "0";
      unsigned radius = 10;
      std::vector<std::string> window;
    };
    auto o = std::make_shared<Opts>();
    CLI::App* sub = subcommand("orbit", "Orbit of a point over the word ball (CSV by default)", true);
    sub->add_option("--point", o->point, "Starting point")->capture_default_str();
    sub->add_option("--radius", o->radius, "Word ball radius L")->capture_default_str();
    sub->add_option("--window", o->window, "Keep points in [lo, hi] and report the coverage gap")->expected(2);
    handlers_["orbit"] = [this, o] {
      const Action act = load();
      const RealNum x = parse_number(o->point);
      std::vector<OrbitPoint> pts = orbit(act, x, o->radius, shared_.workers);
      Report r;
      r.config["point"] = o->point;
      r.config["radius"] = o->radius;
      std::optional<Interval> window;
      if (!o->window.empty()) {
        r.config["window"] = o->window;
        window = parse_closed(o->window, "--window");
        std::vector<OrbitPoint> kept;
        for (auto& p : pts) {
          if (window->certainly_contains(p.x)) kept.push_back(std::move(p));
        }
        pts = std::move(kept);
      }
      const Presentation& pres = act.presentation();
      r.result["size"] = pts.size();
      if (window) {
        r.result["window"] = window->to_string();
        r.result["coverage_gap"] = number(coverage_gap(pts, *window));
      }
      r.result["points"] = json::array();
      r.columns = {"value", "approx", "witness"};
      for (const auto& p : pts) {
        const std::string w = word_to_string(pres, p.witness);
        r.result["points"].push_back({{"value", p.x.to_string()}, {"approx", p.x.to_double()}, {"witness", w}});
        r.rows.push_back({p.x.to_string(), approx(p.x), w});
      }
      return r;
    };
  }

  void add_transitive() {
    struct Opts {
      std::vector<std::string> u;
      std::vector<std::string> v;
      unsigned radius = 12;
    };
    auto o = std::make_shared<Opts>();
    CLI::App* sub = subcommand("transitive", "Search the word ball for g with g(U) meeting V", true);
    sub->add_option("--interval", o->u, "Source interval U = (lo, hi)")->required()->expected(2);
    sub->add_option("--target", o->v, "Target interval V = (lo, hi)")->required()->expected(2);
    sub->add_option("--radius", o->radius, "Largest word length searched")->capture_default_str();
    handlers_["transitive"] = [this, o] {
      const Action act = load();
      const Interval u = parse_open(o->u, "--interval");
      const Interval v = parse_open(o->v, "--target");
      Report r;
      r.config["interval"] = o->u;
      r.config["target"] = o->v;
      r.config["radius"] = o->radius;
      const auto w = transitivity_search(act, u, v, o->radius, shared_.workers);
      r.result["found"] = w.has_value();
      r.columns = {"found", "word", "length", "image"};
      if (w) {
        const std::string word = word_to_string(act.presentation(), w->word);
        r.result["word"] = word;
        r.result["length"] = w->radius;
        r.result["image"] = w->image.to_string();
        r.rows.push_back({"true", word, std::to_string(w->radius), w->image.to_string()});
      } else {
        r.status = 1;
        r.rows.push_back({"false", "", "", ""});
      }
      return r;
    };
  }

  void add_wander_check() {
    struct Opts {
      std::vector<std::string> j;
      unsigned radius = 6;
      std::size_t grid = 64;
      std::string tol = "1e-9";
      bool dedup = false;
    };
    auto o = std::make_shared<Opts>();
    CLI::App* sub = subcommand("wander-check", "Certify or refute that J is wandering over the word ball", true);
    sub->add_option("--interval", o->j, "Candidate interval J = (lo, hi)")->required()->expected(2);
    sub->add_option("--radius", o->radius, "Word ball radius L")->capture_default_str();
    sub->add_option("--grid", o->grid, "Sample points for pointwise-fixed checks")->capture_default_str();
    sub->add_option("--tol", o->tol, "Tolerance for pointwise-fixed checks")->capture_default_str();
    sub->add_flag("--dedup", o->dedup, "One word per group element instead of every reduced word");
    handlers_["wander-check"] = [this, o] {
      const Action act = load();
      const Interval j = parse_open(o->j, "--interval");
      CertificateOptions opts;
      opts.grid_n = o->grid;
      opts.tol = parse_number(o->tol);
      opts.dedup_elements = o->dedup;
      opts.workers = shared_.workers;
      const WanderingCertificate cert = wandering_certificate(act, j, o->radius, opts);
      Report r;
      r.config["interval"] = o->j;
      r.config["radius"] = o->radius;
      r.config["grid"] = o->grid;
      r.config["tol"] = o->tol;
      r.config["dedup"] = o->dedup;
      r.result = certificate_json(act.presentation(), cert, true);
      r.columns = {"word", "verdict", "undecided"};
      for (const auto& v : cert.verdicts) {
        r.rows.push_back({word_to_string(act.presentation(), v.word), to_string(v.verdict), v.undecided ? "true" : "false"});
      }
      r.status = cert.certified ? 0 : 1;
      return r;
    };
  }

  static json certificate_json(const Presentation& p, const WanderingCertificate& cert, bool with_words) {
    json j;
    j["interval"] = cert.interval.to_string();
    j["radius"] = cert.radius;
    j["certified"] = cert.certified;
    j["witness"] = cert.witness ? json(word_to_string(p, *cert.witness)) : json(nullptr);
    std::size_t disjoint = 0;
    std::size_t fixed = 0;
    std::size_t violation = 0;
    std::size_t undecided = 0;
    for (const auto& v : cert.verdicts) {
      if (v.verdict == Verdict::Disjoint) ++disjoint;
      if (v.verdict == Verdict::PointwiseFixed) ++fixed;
      if (v.verdict == Verdict::Violation) ++violation;
      if (v.undecided) ++undecided;
    }
    j["words"] = cert.verdicts.size();
    j["counts"] = {{"disjoint", disjoint}, {"pointwise-fixed", fixed}, {"violation", violation}, {"undecided", undecided}};
    if (with_words) {
      j["verdicts"] = json::array();
      for (const auto& v : cert.verdicts) {
        j["verdicts"].push_back(
            {{"word", word_to_string(p, v.word)}, {"verdict", to_string(v.verdict)}, {"undecided", v.undecided}});
      }
    }
    return j;
  }

  void add_wander_find() {
    struct Opts {
      std::vector<std::string> window = {"-4", "4"};
      std::size_t grid = 801;
      std::string fix_tol = "1e-12";
      std::string claim_tol = "1e-6";
      unsigned verify_radius = 0;
    };
    auto o = std::make_shared<Opts>();
    CLI::App* sub = subcommand("wander-find", "Construct a wandering interval from nested Fix-complements", true);
    sub->add_option("--window", o->window, "Search window (lo, hi)")->expected(2)->capture_default_str();
    sub->add_option("--grid", o->grid, "Grid size for the Fix-set search")->capture_default_str();
    sub->add_option("--fix-tol", o->fix_tol, "Fixed-point tolerance")->capture_default_str();
    sub->add_option("--claim-tol", o->claim_tol, "Tolerance for the sampled claims")->capture_default_str();
    sub->add_option("--verify-radius", o->verify_radius, "Also certify the result at this radius (0 = skip)")
        ->capture_default_str();
    handlers_["wander-find"] = [this, o] {
      const Action act = load();
      WanderingParams params;
      params.grid_n = o->grid;
      params.fix_tol = parse_number(o->fix_tol);
      params.claim_tol = parse_number(o->claim_tol);
      params.verify_radius = o->verify_radius;
      Report r;
      r.config["window"] = o->window;
      r.config["grid"] = o->grid;
      r.config["fix_tol"] = o->fix_tol;
      r.config["claim_tol"] = o->claim_tol;
      r.config["verify_radius"] = o->verify_radius;
      r.columns = {"step", "label", "component", "claim"};
      try {
        const WanderingResult res = find_wandering_interval(act, parse_open(o->window, "--window"), params);
        r.result["constructed"] = true;
        r.result["j"] = res.j.to_string();
        r.result["trivial_action"] = res.trivial_action;
        r.result["steps"] = json::array();
        for (std::size_t i = 0; i < res.steps.size(); ++i) {
          const auto& s = res.steps[i];
          r.result["steps"].push_back({{"label", s.label}, {"component", s.component.to_string()}, {"claim", s.claim}});
          r.rows.push_back({std::to_string(i + 1), s.label, s.component.to_string(), s.claim});
        }
        if (res.certificate) {
          r.result["certificate"] = certificate_json(act.presentation(), *res.certificate, false);
          if (!res.certificate->certified) r.status = 1;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ConstructionFailed) throw;
        r.result["constructed"] = false;
        r.result["diagnosis"] = e.what();
        r.status = 1;
      }
      return r;
    };
  }

  void add_cantor() {
    struct Opts {
      std::size_t depth = 3;
      unsigned radius = 5;
      std::vector<std::string> seed = {"0", "1"};
      unsigned search_radius = 20;
      std::string tol = "1e-9";
      unsigned max_refinements = 200;
    };
    auto o = std::make_shared<Opts>();
    CLI::App* sub = subcommand("cantor", "Build and check a finite-depth Cantor ladder", true);
    sub->add_option("--depth", o->depth, "Number of levels")->capture_default_str()->check(CLI::Range(1, 12));
    sub->add_option("--radius", o->radius, "Ball radius for the ball conditions")->capture_default_str();
    sub->add_option("--interval", o->seed, "Seed interval U_0")->expected(2)->capture_default_str();
    sub->add_option("--search-radius", o->search_radius, "Longest word tried as a moving word")->capture_default_str();
    sub->add_option("--tol", o->tol, "Tolerance for g(U) = U")->capture_default_str();
    sub->add_option("--max-refinements", o->max_refinements, "Gap refinement rounds per level")->capture_default_str();
    handlers_["cantor"] = [this, o] {
      const Action act = load();
      const Presentation& p = act.presentation();
      CantorParams params;
      params.radius = o->radius;
      params.search_radius = o->search_radius;
      params.tol = parse_number(o->tol);
      params.max_refinements = o->max_refinements;
      params.workers = shared_.workers;
      Report r;
      r.config["depth"] = o->depth;
      r.config["radius"] = o->radius;
      r.config["interval"] = o->seed;
      r.config["search_radius"] = o->search_radius;
      r.config["tol"] = o->tol;
      r.config["max_refinements"] = o->max_refinements;
      r.columns = {"level", "word", "components", "intervals"};
      CantorLadder ladder;
      try {
        ladder = cantor_ladder(act, o->depth, parse_open(o->seed, "--interval"), params);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoMovingPair) throw;
        r.result["complete"] = false;
        r.result["diagnosis"] = e.what();
        r.status = 1;
        return r;
      }
      r.result["complete"] = ladder.complete;
      r.result["diagnosis"] = ladder.diagnosis;
      r.result["passed"] = ladder.check.passed;
      r.result["levels"] = json::array();
      for (std::size_t i = 0; i < ladder.levels.size(); ++i) {
        const CantorLevel& lvl = ladder.levels[i];
        json level;
        level["level"] = i + 1;
        level["word"] = word_to_string(p, lvl.g);
        level["x"] = number(lvl.x);
        level["v"] = lvl.v.to_string();
        level["u"] = lvl.u.to_string();
        level["grid"] = lvl.grid;
        level["elements"] = json::array();
        for (const auto& g : lvl.elements) level["elements"].push_back(word_to_string(p, g));
        level["lambda"] = json::array();
        std::vector<std::string> row = {std::to_string(i + 1), word_to_string(p, lvl.g), std::to_string(lvl.lambda.size())};
        for (const auto& c : lvl.lambda) {
          level["lambda"].push_back(c.to_string());
          row.push_back(approx(c.lo().value));
          row.push_back(approx(c.hi().value));
        }
        r.result["levels"].push_back(std::move(level));
        r.rows.push_back(std::move(row));
      }
      r.result["checks"] = json::array();
      for (const auto& [name, ok] : ladder.check.items) r.result["checks"].push_back({{"check", name}, {"passed", ok}});
      if (!ladder.complete || !ladder.check.passed) r.status = 1;
      return r;
    };
  }

  void add_classify() {
    struct Opts {
      std::string point = "0";
      unsigned radius = 20;
      std::vector<std::string> window;
      ClassifyThresholds thresholds;
    };
    auto o = std::make_shared<Opts>();
    CLI::App* sub = subcommand("classify", "Heuristic shape of an orbit closure seen through a window", true);
    sub->add_option("--point", o->point, "Orbit base point")->capture_default_str();
    sub->add_option("--radius", o->radius, "Word ball radius L")->capture_default_str();
    sub->add_option("--window", o->window, "Finite window (lo, hi)")->required()->expected(2);
    sub->add_option("--dense-fraction", o->thresholds.dense_fraction, "Dense below this gap / diameter")
        ->capture_default_str();
    sub->add_option("--spacing-fraction", o->thresholds.spacing_fraction, "Discrete above this min / median spacing")
        ->capture_default_str();
    sub->add_option("--growth-limit", o->thresholds.growth_limit, "Discrete needs orbit growth at most this")
        ->capture_default_str();
    handlers_["classify"] = [this, o] {
      const Action act = load();
      const OrbitClosureClass c = classify_orbit_closure(act, parse_number(o->point), o->radius,
                                                         parse_closed(o->window, "--window"), o->thresholds,
                                                         shared_.workers);
      Report r;
      r.config["point"] = o->point;
      r.config["radius"] = o->radius;
      r.config["window"] = o->window;
      r.config["dense_fraction"] = o->thresholds.dense_fraction;
      r.config["spacing_fraction"] = o->thresholds.spacing_fraction;
      r.config["growth_limit"] = o->thresholds.growth_limit;
      r.result = {{"kind", to_string(c.kind)},
                  {"best_effort", c.best_effort},
                  {"points_in_window", c.points_in_window},
                  {"orbit_size", c.orbit_size},
                  {"half_orbit_size", c.half_orbit_size},
                  {"growth", c.growth},
                  {"coverage_gap", c.coverage_gap},
                  {"min_spacing", c.min_spacing},
                  {"median_spacing", c.median_spacing},
                  {"max_spacing", c.max_spacing}};
      r.columns = {"kind", "best_effort", "points_in_window", "coverage_gap", "growth"};
      r.rows.push_back({to_string(c.kind), c.best_effort ? "true" : "false", std::to_string(c.points_in_window),
                        brief(c.coverage_gap), brief(c.growth)});
      return r;
    };
  }

  void add_relations() {
    struct Opts {
      std::size_t points = 100;
      std::vector<std::string> range = {"-5", "5"};
      std::string tol = "1e-20";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* sub = subcommand("relations", "Check the defining relations on sample points", true);
    sub->add_option("--points", o->points, "Number of sample points")->capture_default_str();
    sub->add_option("--range", o->range, "Sample range [lo, hi]")->expected(2)->capture_default_str();
    sub->add_option("--tol", o->tol, "Largest accepted residual")->capture_default_str();
    handlers_["relations"] = [this, o] {
      const Action act = load();
      const RelationReport rep =
          check_relations(act, {parse_closed(o->range, "--range"), o->points}, parse_number(o->tol), shared_.workers);
      Report r;
      r.config["points"] = o->points;
      r.config["range"] = o->range;
      r.config["tol"] = o->tol;
      r.result["samples"] = rep.samples;
      r.result["passed"] = rep.passed;
      r.result["relations"] = json::array();
      r.columns = {"relation", "worst", "worst_at", "passed"};
      for (const auto& rel : rep.relations) {
        r.result["relations"].push_back({{"relation", rel.relation},
                                         {"worst", rel.worst.to_double()},
                                         {"worst_at", rel.worst_at.to_string()},
                                         {"passed", rel.passed}});
        r.rows.push_back({rel.relation, approx(rel.worst), rel.worst_at.to_string(), rel.passed ? "true" : "false"});
      }
      r.status = rep.passed ? 0 : 1;
      return r;
    };
  }

  void add_extend() {
    struct Opts {
      std::string base = "direct_product";
      std::string alpha = "sqrt2";
      std::size_t pairs = 200;
      unsigned length = 6;
      std::size_t points = 50;
      std::vector<std::string> range = {"-3", "3"};
      std::string tol = "1e-20";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* sub = subcommand("extend", "Extend an action on (0, 1) to the line and sweep the homomorphism property",
                               false);
    sub->add_option("--base", o->base, "Extension to build")
        ->check(CLI::IsMember({"direct_product", "klein_ladder"}))
        ->capture_default_str();
    sub->add_option("--alpha", o->alpha, "Second translation for direct_product")->capture_default_str();
    sub->add_option("--pairs", o->pairs, "Random word pairs")->capture_default_str();
    sub->add_option("--length", o->length, "Longest random word")->capture_default_str();
    sub->add_option("--points", o->points, "Sample points per pair")->capture_default_str();
    sub->add_option("--range", o->range, "Sample range [lo, hi]")->expected(2)->capture_default_str();
    sub->add_option("--tol", o->tol, "Largest accepted residual")->capture_default_str();
    handlers_["extend"] = [this, o] {
      const ExtensionSpec spec = o->base == "direct_product" ? direct_product_spec(parse_number(o->alpha))
                                                             : klein_ladder_spec();
      const Action act = extend_action(spec);
      HomomorphismSweep sweep;
      sweep.pairs = o->pairs;
      sweep.max_length = o->length;
      sweep.points = o->points;
      sweep.range = parse_closed(o->range, "--range");
      sweep.tol = parse_number(o->tol);
      sweep.seed = shared_.seed;
      const HomomorphismReport hom = homomorphism_sweep(act, sweep, shared_.workers);
      const RelationReport rel = check_relations(act, {sweep.range, o->points}, sweep.tol, shared_.workers);
      const Presentation& p = act.presentation();
      Report r;
      r.config["base"] = o->base;
      if (o->base == "direct_product") r.config["alpha"] = o->alpha;
      r.config["pairs"] = o->pairs;
      r.config["length"] = o->length;
      r.config["points"] = o->points;
      r.config["range"] = o->range;
      r.config["tol"] = o->tol;
      r.result["action"] = act.name();
      r.result["presentation"] = p.to_string();
      r.result["homomorphism"] = {{"pairs", hom.pairs},
                                  {"worst", hom.worst.to_double()},
                                  {"worst_pair", {word_to_string(p, hom.worst_u), word_to_string(p, hom.worst_v)}},
                                  {"worst_at", hom.worst_at.to_string()},
                                  {"undecided", hom.undecided},
                                  {"refuted", hom.refuted},
                                  {"passed", hom.passed}};
      r.result["relations"] = json::array();
      for (const auto& x : rel.relations) {
        r.result["relations"].push_back({{"relation", x.relation}, {"worst", x.worst.to_double()}, {"passed", x.passed}});
      }
      r.result["passed"] = hom.passed && rel.passed;
      r.columns = {"check", "worst", "passed"};
      r.rows.push_back({"homomorphism", approx(hom.worst), hom.passed ? "true" : "false"});
      for (const auto& x : rel.relations) r.rows.push_back({x.relation, approx(x.worst), x.passed ? "true" : "false"});
      r.status = hom.passed && rel.passed ? 0 : 1;
      return r;
    };
  }

  void add_gallery_list() {
    subcommand("gallery-list", "List the built-in actions", false);
    handlers_["gallery-list"] = [] {
      Report r;
      r.result["entries"] = json::array();
      r.columns = {"name", "description", "params"};
      for (const auto& e : gallery_entries()) {
        r.result["entries"].push_back({{"name", e.name}, {"description", e.description}, {"params", e.params}});
        r.rows.push_back({e.name, e.description, e.params});
      }
      return r;
    };
  }

  CLI::App app_;
  Shared shared_;
  std::set<std::string> uses_action_;
  std::map<std::string, std::function<Report()>> handlers_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli;
  return cli.run(args, out, err);
}

}  // namespace lineact::cli
