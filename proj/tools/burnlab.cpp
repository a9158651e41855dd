#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "burnlab/cayley.hpp"
#include "burnlab/config.hpp"
#include "burnlab/corpus.hpp"
#include "burnlab/probability.hpp"

using namespace burnlab;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kViolation = 1, kInputError = 2;

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string big_str(const BigRational& r) {
  if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

// Rows of named cells, written as CSV or as a JSON array of objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void write(const SessionConfig& cfg, const std::string& stem) const {
    fs::create_directories(cfg.output_dir);
    const fs::path path = fs::path(cfg.output_dir) / (stem + "." + cfg.format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    if (cfg.format == "csv") {
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          const bool quote = cells[i].find_first_of(",\"") != std::string::npos;
          std::string c = cells[i];
          if (quote) {
            std::string q;
            for (char ch : c) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            c = "\"" + q + "\"";
          }
          out << (i ? "," : "") << c;
        }
        out << "\n";
      };
      line(columns);
      for (const auto& r : rows) line(r);
    } else {
      ojson arr = ojson::array();
      for (const auto& r : rows) {
        ojson o;
        for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
        arr.push_back(o);
      }
      out << arr.dump(2) << "\n";
    }
  }
};

void write_json(const SessionConfig& cfg, const std::string& name, const ojson& j) {
  fs::create_directories(cfg.output_dir);
  std::ofstream out(fs::path(cfg.output_dir) / name, std::ios::binary);
  out << j.dump(2) << "\n";
}

struct Globals {
  std::optional<std::string> config_path;
  std::optional<unsigned> m;
  std::optional<long> k;
  std::vector<std::string> params;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out, format;
  std::optional<std::size_t> max_relator_applications, max_ball_radius;
  bool allow_small_k = false;
  unsigned workers = 1;
};

SessionConfig resolve(const Globals& g) {
  SessionConfig c = load_config(g.config_path, false);
  if (g.m) c.m = *g.m;
  if (g.k) c.params.k = *g.k;
  for (const auto& kv : g.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw InputError("--param expects name=value, got " + kv);
    nlohmann::json j;
    j[kv.substr(0, eq)] = kv.substr(eq + 1);
    if (kv.substr(0, eq) == "k") j["k"] = std::stol(kv.substr(eq + 1));
    c.params = params_from_json(j, c.params);
  }
  if (g.seed) c.seed = *g.seed;
  if (g.out) c.output_dir = *g.out;
  if (g.format) c.format = *g.format;
  if (g.max_relator_applications) c.budget.max_relator_applications = *g.max_relator_applications;
  if (g.max_ball_radius) c.budget.max_ball_radius = *g.max_ball_radius;
  c.allow_small_k = c.allow_small_k || g.allow_small_k;
  validate_config(c);
  for (const auto& cav : check_params(c.params, c.allow_small_k).caveats) std::cerr << "caveat: " << cav << "\n";
  return c;
}

// A presentation file, or one built on the fly from the config.
GradedPresentation presentation(const SessionConfig& cfg, const std::string& file, unsigned rank, unsigned workers) {
  if (!file.empty()) {
    auto g = presentation_from_json(read_json_file(file), cfg.oracle_options(), cfg.allow_small_k);
    if (g.built_through() < rank) throw InputError("presentation is built through rank " + std::to_string(g.built_through()));
    return g;
  }
  GradedPresentation g(Alphabet(cfg.m), cfg.params, cfg.oracle_options(), cfg.expansion_cap);
  g.build_through(rank, workers);
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"burnlab: experiments with graded Burnside-type presentations"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::string cfg_help = std::string("JSON config file (default: $") + kConfigEnv + ")";
  app.add_option("--config", g.config_path, cfg_help);
  app.add_option("--m", g.m, "number of letters s1..sm");
  app.add_option("--k", g.k, "odd exponent k");
  app.add_option("--param", g.params, "override a constant, e.g. alpha=1/100");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--format", g.format, "csv or json");
  app.add_option("--max-relator-applications", g.max_relator_applications, "oracle budget");
  app.add_option("--max-ball-radius", g.max_ball_radius, "oracle budget");
  app.add_option("--workers", g.workers, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  app.add_flag("--allow-small-k", g.allow_small_k, "accept epsilon*k <= 2 with a caveat");

  unsigned max_rank = 1, rank = 0;
  std::size_t n_max = 4, n_min = 0, trials = 0;
  std::string pres_file, law_text = "x1^3", step = "lazy", manifest = "data/diagrams/manifest.json";
  bool walk_mode = false;

  auto* build = app.add_subcommand("build", "build the presentation through a rank");
  build->add_option("--max-rank", max_rank, "highest rank")->required();

  auto* structure = app.add_subcommand("structure", "check the structural properties of a presentation");
  structure->add_option("--presentation", pres_file, "presentation file")->required();

  auto add_source = [&](CLI::App* s) {
    s->add_option("--presentation", pres_file, "presentation file (default: build from config)");
    s->add_option("--rank", rank, "rank of the group (default 0, or the file's top rank)");
    s->add_option("--n-max", n_max, "largest radius");
  };
  auto* growth_cmd = app.add_subcommand("growth", "ball sizes gamma_G(n) and gamma_H(n)");
  add_source(growth_cmd);
  auto* density = app.add_subcommand("density", "density of the conjugates of <a,b> in balls");
  add_source(density);
  auto* lawprob = app.add_subcommand("lawprob", "probability that a law holds");
  add_source(lawprob);
  lawprob->add_option("--n-min", n_min, "smallest radius or walk length");
  lawprob->add_option("--law", law_text, "law, e.g. x1^3 or [x,y]");
  lawprob->add_option("--trials", trials, "samples per row (0 = exhaustive over the ball)");
  lawprob->add_flag("--walk", walk_mode, "sample by random walk instead of uniformly from balls");
  lawprob->add_option("--step", step, "step distribution: lazy, uniform or word:p,...");
  auto* rwalk = app.add_subcommand("rwalk", "return probability of a walk in G/<<a,b>>");
  rwalk->add_option("--presentation", pres_file, "presentation file (default: build from config)");
  rwalk->add_option("--rank", rank, "rank of the group");
  rwalk->add_option("--n-max", n_max, "longest walk");
  rwalk->add_option("--trials", trials, "walks per row")->required();
  rwalk->add_option("--step", step, "step distribution");
  auto* dcheck = app.add_subcommand("diagram-check", "check a diagram corpus against its manifest");
  dcheck->add_option("--manifest", manifest, "manifest file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const SessionConfig cfg = resolve(g);
    const unsigned W = g.workers;

    if (build->parsed()) {
      GradedPresentation p(Alphabet(cfg.m), cfg.params, cfg.oracle_options(), cfg.expansion_cap);
      auto reports = p.build_through(max_rank, W);
      write_json(cfg, "presentation.json", to_json(p));
      ojson all = ojson::array();
      std::ostringstream txt;
      for (const auto& r : reports) {
        all.push_back(to_json(r));
        std::size_t adm = 0, rej = 0, unk = 0;
        for (const auto& e : r.entries) (e.outcome == "admitted" ? adm : e.outcome == "rejected" ? rej : unk)++;
        txt << "rank " << r.rank << ": " << adm << " admitted, " << rej << " rejected, " << unk << " unknown"
            << (r.approximate ? " (approximate)" : "") << "\n";
        for (const auto& e : r.entries) txt << "  " << format_word(e.word) << "  " << e.outcome << "  " << e.reason << "\n";
      }
      write_json(cfg, "build_report.json", all);
      std::ofstream(fs::path(cfg.output_dir) / "build_report.txt", std::ios::binary) << txt.str();
      for (const auto& r : reports) std::cout << "rank " << r.rank << ": " << r.admitted.size() << " periods" << (r.approximate ? " (approximate)" : "") << "\n";
      if (max_rank == 0) std::cout << "rank 0: free presentation\n";
      return kOk;
    }

    if (structure->parsed()) {
      auto p = presentation(cfg, pres_file, 0, W);
      auto rep = p.verify_structure();
      Table t{{"property", "period", "rank", "status", "detail"}, {}};
      bool fail = false;
      for (const auto& r : rep.rows) {
        std::string st = r.status == Status::yes ? "pass" : r.status == Status::no ? "fail" : "unknown";
        fail = fail || r.status == Status::no;
        t.rows.push_back({r.property, format_word(r.period), std::to_string(r.rank), st, r.detail});
        std::cout << r.property << " " << format_word(r.period) << ": " << st << "\n";
      }
      t.write(cfg, "structure");
      return fail ? kViolation : kOk;
    }

    if (growth_cmd->parsed()) {
      auto p = presentation(cfg, pres_file, rank, W);
      auto table = growth(p.oracle(rank), n_max, W);
      Table t{{"n", "gamma_G", "gamma_H", "exact"}, {}};
      bool fail = false;
      std::uint64_t prev = 0;
      for (const auto& r : table.rows) {
        fail = fail || r.gamma_G < prev;
        prev = r.gamma_G;
        t.rows.push_back({std::to_string(r.radius), std::to_string(r.gamma_G), std::to_string(r.gamma_H), r.exact ? "true" : "false"});
        std::cout << "n=" << r.radius << " gamma_G=" << r.gamma_G << " gamma_H=" << r.gamma_H << (r.exact ? "" : " (upper count)") << "\n";
      }
      t.write(cfg, "growth");
      return fail ? kViolation : kOk;
    }

    if (density->parsed()) {
      auto p = presentation(cfg, pres_file, rank, W);
      ConjugateDensity cd(p.oracle(rank), n_max, W);
      Table t{{"n", "ball", "hg", "hg_hi", "bound", "ratio", "ratio_hi", "ratio_decimal", "exact"}, {}};
      bool fail = false;
      for (std::size_t n = 0; n <= n_max; ++n) {
        auto r = cd.row(n);
        fail = fail || r.hg_count > r.bound;
        t.rows.push_back({std::to_string(n), std::to_string(r.ball), std::to_string(r.hg_count), std::to_string(r.hg_hi), std::to_string(r.bound),
                          big_str(r.ratio_lo), big_str(r.ratio_hi), fixed(static_cast<double>(r.ratio_lo)), r.exact ? "true" : "false"});
        std::cout << "n=" << n << " |B|=" << r.ball << " |B cap H^G|=" << r.hg_count << " bound=" << r.bound << " ratio=" << big_str(r.ratio_lo)
                  << (r.hg_count > r.bound ? "  VIOLATION" : "") << "\n";
      }
      t.write(cfg, "density");
      return fail ? kViolation : kOk;
    }

    if (lawprob->parsed()) {
      auto p = presentation(cfg, pres_file, rank, W);
      const Oracle& o = p.oracle(rank);
      auto law = GroupLaw::parse(law_text);
      Table t{{"n", "mode", "trials", "holds", "fails", "unknown", "point", "ci_lo", "ci_hi"}, {}};
      for (std::size_t n = n_min; n <= n_max; ++n) {
        LawEstimate e;
        if (walk_mode) {
          if (trials == 0) throw InputError("--walk needs --trials > 0");
          e = law_probability_walk(o, law, StepDistribution::parse(step, p.alphabet()), n, trials, cfg.require_seed(), W);
        } else {
          Ball ball = enumerate_ball(o, n, W);
          e = law_probability_ball(o, law, ball, trials, trials ? cfg.require_seed() : 0, W);
        }
        auto ci = e.ci();
        t.rows.push_back({std::to_string(n), walk_mode ? "walk" : e.exhaustive ? "exhaustive" : "ball", std::to_string(e.trials), std::to_string(e.holds),
                          std::to_string(e.fails), std::to_string(e.unknown), fixed(e.point()), fixed(ci.lo), fixed(ci.hi)});
        std::cout << "n=" << n << " P(" << law.text() << ")=" << fixed(e.point()) << " [" << fixed(ci.lo) << ", " << fixed(ci.hi) << "]\n";
      }
      t.write(cfg, "lawprob");
      return kOk;
    }

    if (rwalk->parsed()) {
      auto p = presentation(cfg, pres_file, rank, W);
      auto q = kill_ab(*p.relators(rank));
      Oracle quotient(q, p.params(), cfg.oracle_options());
      auto nu = StepDistribution::parse(step, p.alphabet());
      const bool exact_available = quotient.mode() != Oracle::Mode::general;
      Table t{{"n", "trials", "returns", "estimate", "ci_lo", "ci_hi", "exact"}, {}};
      for (std::size_t n = 0; n <= n_max; ++n) {
        auto e = quotient_return_probability(quotient, nu, n, trials, cfg.require_seed(), W);
        std::string exact = "";
        if (exact_available) {
          auto dist = walk_distribution(quotient, nu, n);
          exact = fixed(dist.count(Word{}) ? dist.at(Word{}) : 0.0);
        }
        auto ci = e.ci();
        t.rows.push_back({std::to_string(n), std::to_string(e.trials), std::to_string(e.holds), fixed(e.point()), fixed(ci.lo), fixed(ci.hi), exact});
        std::cout << "n=" << n << " return=" << fixed(e.point()) << (exact.empty() ? "" : " exact=" + exact) << "\n";
      }
      t.write(cfg, "rwalk");
      return kOk;
    }

    if (dcheck->parsed()) {
      PresentationCache cache(cfg.oracle_options());
      auto rep = check_corpus(manifest, cache);
      Table t{{"file", "valid", "error", "A1", "A2", "A3", "reduced", "status", "detail"}, {}};
      std::size_t good = 0;
      for (const auto& r : rep.rows) {
        auto get = [&](const char* k) { return r.actual.count(k) ? r.actual.at(k) : std::string(); };
        std::string detail;
        for (const auto& m : r.mismatches) detail += (detail.empty() ? "" : "; ") + m;
        good += r.ok();
        t.rows.push_back({r.file, get("valid"), get("error"), get("A1"), get("A2"), get("A3"), get("reduced"), r.ok() ? "ok" : "MISMATCH", detail});
        std::cout << r.file << ": " << (r.ok() ? "ok" : "MISMATCH " + detail) << "\n";
      }
      t.write(cfg, "diagram_check");
      std::cout << good << "/" << rep.rows.size() << " diagrams reproduce their expected verdicts\n";
      return rep.all_ok() ? kOk : kViolation;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
