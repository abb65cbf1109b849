#include "lukas/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lukas/asymptotics.hpp"
#include "lukas/bijection.hpp"
#include "lukas/exact.hpp"
#include "lukas/sampler.hpp"
#include "lukas/series.hpp"
#include "lukas/stepset.hpp"

namespace lukas::cli {

namespace {

using json = nlohmann::ordered_json;

json tag_int(const Int& v) {
  return json{{"type", "integer"}, {"value", v.get_str()}};
}

json tag_rat(const Rat& q) {
  return json{{"type", "rational"},
              {"num", q.get_num().get_str()},
              {"den", q.get_den().get_str()}};
}

json tag_real(const Real& x, unsigned digits) {
  return json{{"type", "approx"}, {"value", x.str(digits)}, {"digits", digits}};
}

json tag_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return json{{"type", "approx"}, {"value", os.str()}, {"digits", 15}};
}

std::string join_argv(int argc, const char* const* argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

std::vector<int> parse_path_text(std::string_view text) {
  std::vector<int> steps;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    std::size_t b = token.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    std::size_t e = token.find_last_not_of(" \t\r\n");
    try {
      std::size_t used = 0;
      std::string item = token.substr(b, e - b + 1);
      int value = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      steps.push_back(value);
    } catch (const std::logic_error&) {
      throw ValidationError("cannot parse integer \"" + token + "\"");
    }
  }
  return steps;
}

std::string path_to_text(std::span<const int> steps) {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(steps[i]);
  }
  return out;
}

using CsvRows = std::vector<std::vector<std::string>>;

struct Invocation {
  std::string command_line;
  std::string steps_text;
  std::string format = "json";
  std::optional<unsigned> digits;

  void emit(std::ostream& out, const json& payload, const CsvRows& csv) const {
    if (format == "csv") {
      for (const auto& row : csv) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i) out << ',';
          if (row[i].find(',') != std::string::npos)
            out << '"' << row[i] << '"';
          else
            out << row[i];
        }
        out << '\n';
      }
      return;
    }
    json envelope;
    envelope["tool"] = std::string(kToolName) + " " + kToolVersion;
    envelope["command"] = command_line;
    envelope["steps"] = steps_text;
    if (digits)
      envelope["digits"] = *digits;
    else
      envelope["digits"] = nullptr;
    envelope["payload"] = payload;
    out << envelope.dump(2) << '\n';
  }
};

CsvRows kv_rows(const json& payload) {
  CsvRows rows{{"key", "value"}};
  for (auto it = payload.begin(); it != payload.end(); ++it) {
    const json& v = it.value();
    std::string text;
    if (v.is_object() && v.contains("value"))
      text = v["value"].get<std::string>();
    else if (v.is_object() && v.contains("num"))
      text = v["num"].get<std::string>() + "/" + v["den"].get<std::string>();
    else if (v.is_string())
      text = v.get<std::string>();
    else
      text = v.dump();
    rows.push_back({it.key(), text});
  }
  return rows;
}

unsigned default_digits() {
  if (const char* env = std::getenv("LUKAS_DIGITS")) {
    long v = std::atol(env);
    if (v >= 10 && v <= 10000) return unsigned(v);
  }
  return kDefaultDigits;
}

struct Args {
  std::string steps;
  std::string kind = "excursion";
  long n = 0;
  int r = 1;
  unsigned digits = kDefaultDigits;
  std::uint64_t seed = 1;
  long trials = 10000;
  int threads = 1;
  std::string stat = "mean";
  std::string mode = "path";
  std::string to = "tree";
  std::string lengths;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"exact and asymptotic ascent statistics for Lukasiewicz paths",
               kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

  Args a;
  a.digits = default_digits();
  Invocation inv;
  inv.command_line = join_argv(argc, argv);

  auto add_common = [&](CLI::App* cmd, bool needs_kind) {
    cmd->add_option("--steps", a.steps, "step set, e.g. \"-1,0,2\"")
        ->required();
    cmd->add_option("--format", inv.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    if (needs_kind)
      cmd->add_option("--kind", a.kind, "excursion|dispersed|meander")
          ->check(CLI::IsMember({"excursion", "dispersed", "meander"}));
    return cmd;
  };

  CLI::App* c_count = add_common(app.add_subcommand("count", "exact path count"), true);
  c_count->add_option("-n", a.n, "path length")->required();
  c_count->add_option("--threads", a.threads);

  CLI::App* c_dist = add_common(
      app.add_subcommand("dist", "exact r-ascent distribution"), true);
  c_dist->add_option("-n", a.n, "path length")->required();
  c_dist->add_option("-r", a.r, "ascent length")->required();
  c_dist->add_option("--threads", a.threads);

  CLI::App* c_moments = add_common(
      app.add_subcommand("moments", "exact mean and variance"), true);
  c_moments->add_option("-n", a.n, "path length")->required();
  c_moments->add_option("-r", a.r, "ascent length")->required();
  c_moments->add_option("--threads", a.threads);

  CLI::App* c_constants = add_common(
      app.add_subcommand("constants", "structural constants"), false);
  c_constants->add_option("--digits", a.digits, "significant decimal digits");
  CLI::Option* constants_r = c_constants->add_option("-r", a.r, "ascent length");

  CLI::App* c_series = add_common(
      app.add_subcommand("series", "generating function coefficients"), true);
  c_series->add_option("-n", a.n, "truncation order")->required();
  c_series->add_option("-r", a.r, "ascent length")->required();

  CLI::App* c_asym = add_common(
      app.add_subcommand("asym", "asymptotic formula evaluation"), true);
  c_asym->add_option("-n", a.n, "path length")->required();
  c_asym->add_option("-r", a.r, "ascent length");
  c_asym->add_option("--stat", a.stat, "count|mean|variance")
      ->check(CLI::IsMember({"count", "mean", "variance"}));
  c_asym->add_option("--digits", a.digits);

  CLI::App* c_compare = add_common(
      app.add_subcommand("compare", "exact vs asymptotic expectation"), true);
  c_compare->add_option("-r", a.r, "ascent length")->required();
  c_compare->add_option("--lengths", a.lengths, "comma-separated path lengths")
      ->required();
  c_compare->add_option("--digits", a.digits);
  c_compare->add_option("--threads", a.threads);

  CLI::App* c_sample = add_common(
      app.add_subcommand("sample", "uniform random paths"), true);
  c_sample->add_option("-n", a.n, "path length")->required();
  c_sample->add_option("-r", a.r, "ascent length");
  c_sample->add_option("--seed", a.seed, "64-bit seed");
  c_sample->add_option("--trials", a.trials);
  c_sample->add_option("--mode", a.mode, "path|moments|ks")
      ->check(CLI::IsMember({"path", "moments", "ks"}));

  CLI::App* c_tree = add_common(
      app.add_subcommand("tree", "excursion <-> plane tree (stdin)"), false);
  c_tree->add_option("--to", a.to, "tree|path")
      ->check(CLI::IsMember({"tree", "path"}));
  CLI::Option* tree_r = c_tree->add_option("-r", a.r, "also count r-ascents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  }

  try {
    StepSet s = StepSet::parse(a.steps);
    inv.steps_text = s.to_string();
    ExactOptions opt{a.threads};

    if (app.got_subcommand(c_count)) {
      Int v = count(s, parse_path_kind(a.kind), a.n, opt);
      json payload{{"kind", a.kind}, {"n", a.n}, {"count", tag_int(v)}};
      inv.emit(out, payload, kv_rows(payload));
    } else if (app.got_subcommand(c_dist)) {
      AscentDistribution d = distribution(s, parse_path_kind(a.kind), a.n, a.r, opt);
      json counts = json::array();
      CsvRows rows{{"k", "count"}};
      for (std::size_t k = 0; k < d.counts.size(); ++k) {
        counts.push_back(tag_int(d.counts[k]));
        rows.push_back({std::to_string(k), d.counts[k].get_str()});
      }
      json payload{{"kind", a.kind}, {"n", a.n}, {"r", a.r}, {"counts", counts}};
      inv.emit(out, payload, rows);
    } else if (app.got_subcommand(c_moments)) {
      Moments m = moments(s, parse_path_kind(a.kind), a.n, a.r, opt);
      json payload{{"kind", a.kind},
                   {"n", a.n},
                   {"r", a.r},
                   {"count", tag_int(m.count)},
                   {"mean", tag_rat(m.mean)},
                   {"variance", tag_rat(m.variance)}};
      inv.emit(out, payload, kv_rows(payload));
    } else if (app.got_subcommand(c_constants)) {
      inv.digits = a.digits;
      StructuralConstants sc = structural_constants(s, a.digits);
      json payload{{"tau", tag_real(sc.tau, a.digits)},
                   {"rho", tag_real(sc.rho, a.digits)},
                   {"c", tag_real(sc.c, a.digits)},
                   {"period", sc.period},
                   {"drift", sc.drift},
                   {"tau_exact_one", sc.tau_exact_one},
                   {"S_tau", tag_real(sc.S_tau, a.digits)},
                   {"S2_tau", tag_real(sc.S2_tau, a.digits)},
                   {"S3_tau", tag_real(sc.S3_tau, a.digits)},
                   {"S4_tau", tag_real(sc.S4_tau, a.digits)}};
      if (*constants_r) {
        ExcursionAscentConstants ec = excursion_ascent_constants(s, a.r, a.digits);
        payload["excursion"] = json{{"mu", tag_real(ec.mu, a.digits)},
                                    {"c0", tag_real(ec.c0, a.digits)},
                                    {"sigma2", tag_real(ec.sigma2, a.digits)}};
        if (!sc.tau_exact_one) {
          MeanderConstants mc = meander_constants(s, a.r, a.digits);
          payload["meander"] = json{{"xi", tag_real(mc.xi, a.digits)},
                                    {"V_xi", tag_real(mc.V_xi, a.digits)},
                                    {"Vz_xi", tag_real(mc.Vz_xi, a.digits)},
                                    {"Vt_xi", tag_real(mc.Vt_xi, a.digits)},
                                    {"mu", tag_real(mc.mu, a.digits)},
                                    {"c0", tag_real(mc.c0, a.digits)},
                                    {"sigma2", tag_real(mc.sigma2, a.digits)}};
        }
      }
      inv.emit(out, payload, kv_rows(payload));
    } else if (app.got_subcommand(c_series)) {
      PathKind kind = parse_path_kind(a.kind);
      BivariateSeries coeffs =
          kind == PathKind::Excursion ? solve_V(s, a.r, a.n + 1).shifted_down(1)
          : kind == PathKind::Dispersed ? dispersed_series(s, a.r, a.n)
                                        : meander_series(s, a.r, a.n);
      json list = json::array();
      CsvRows rows{{"n", "k", "coefficient"}};
      for (int n = 0; n <= coeffs.order(); ++n) {
        const TPoly& p = coeffs.coeff(n);
        for (int k = 0; k <= p.degree(); ++k) {
          if (p.coeff(k) == 0) continue;
          list.push_back(json{{"n", n}, {"k", k}, {"value", tag_int(p.coeff(k))}});
          rows.push_back({std::to_string(n), std::to_string(k), p.coeff(k).get_str()});
        }
      }
      json payload{{"kind", a.kind}, {"order", a.n}, {"r", a.r},
                   {"coefficients", list}};
      inv.emit(out, payload, rows);
    } else if (app.got_subcommand(c_asym)) {
      inv.digits = a.digits;
      PathKind kind = parse_path_kind(a.kind);
      Real v(0, a.digits);
      if (a.stat == "count") {
        v = kind == PathKind::Excursion ? excursion_count_asym(s, a.n, a.digits)
            : kind == PathKind::Dispersed ? dispersed_count_asym(s, a.n, a.digits)
                                          : meander_count_asym(s, a.n, a.digits);
      } else if (a.stat == "mean") {
        v = kind == PathKind::Excursion
                ? excursion_expectation_asym(s, a.r, a.n, a.digits)
            : kind == PathKind::Dispersed
                ? dispersed_expectation_asym(s, a.r, a.n, a.digits)
                : meander_expectation_asym(s, a.r, a.n, a.digits);
      } else {
        if (kind == PathKind::Excursion)
          v = excursion_variance_asym(s, a.r, a.n, a.digits);
        else if (kind == PathKind::Meander)
          v = meander_variance_asym(s, a.r, a.n, a.digits);
        else
          throw ValidationError("no dispersed variance expansion is available");
      }
      json payload{{"kind", a.kind}, {"stat", a.stat}, {"n", a.n}, {"r", a.r},
                   {"value", tag_real(v, a.digits)}};
      inv.emit(out, payload, kv_rows(payload));
    } else if (app.got_subcommand(c_compare)) {
      inv.digits = a.digits;
      std::vector<long> lengths;
      for (int v : parse_path_text(a.lengths)) lengths.push_back(v);
      CompareReport rep = compare_report(s, parse_path_kind(a.kind), a.r,
                                         lengths, a.digits, opt);
      json rows_json = json::array();
      std::ostringstream exp_text;
      exp_text.precision(6);
      exp_text << rep.fitted_exponent;
      CsvRows rows{{"n", "exact", "asymptotic", "residual", "fitted_exponent"}};
      for (const CompareRow& row : rep.rows) {
        rows_json.push_back(json{{"n", row.n},
                                 {"exact", tag_rat(row.exact_mean)},
                                 {"asymptotic", tag_real(row.asym, a.digits)},
                                 {"residual", tag_real(row.residual, a.digits)}});
        rows.push_back({std::to_string(row.n),
                        row.exact_mean.get_str(),
                        row.asym.str(a.digits),
                        row.residual.str(a.digits),
                        exp_text.str()});
      }
      json payload{{"kind", a.kind}, {"r", a.r}, {"rows", rows_json},
                   {"fitted_exponent", rep.fitted_exponent}};
      inv.emit(out, payload, rows);
    } else if (app.got_subcommand(c_sample)) {
      PathKind kind = parse_path_kind(a.kind);
      if (a.mode == "path") {
        LatticePath p = sample_path(s, kind, a.n, a.seed);
        json payload{{"kind", a.kind}, {"n", a.n}, {"seed", a.seed},
                     {"path", path_to_text(p.steps)}};
        inv.emit(out, payload, kv_rows(payload));
      } else if (a.mode == "moments") {
        EmpiricalMoments em = empirical_moments(s, kind, a.n, a.r, a.trials, a.seed);
        json payload{{"kind", a.kind}, {"n", a.n}, {"r", a.r},
                     {"trials", em.trials}, {"seed", a.seed},
                     {"mean", tag_double(em.mean)},
                     {"variance", tag_double(em.variance)}};
        inv.emit(out, payload, kv_rows(payload));
      } else {
        double ks = normality_check(s, a.r, a.n, a.trials, a.seed);
        json payload{{"n", a.n}, {"r", a.r}, {"trials", a.trials},
                     {"seed", a.seed}, {"ks", tag_double(ks)}};
        inv.emit(out, payload, kv_rows(payload));
      }
    } else if (app.got_subcommand(c_tree)) {
      std::string input((std::istreambuf_iterator<char>(std::cin)),
                        std::istreambuf_iterator<char>());
      json payload;
      PlaneTree tree;
      if (a.to == "tree") {
        std::vector<int> steps = parse_path_text(input);
        tree = path_to_tree(s, steps);
        payload["tree"] = tree_to_text(tree);
      } else {
        tree = tree_from_text(input);
        payload["path"] = path_to_text(tree_to_path(s, tree));
      }
      payload["nodes"] = tree.node_count();
      if (*tree_r) payload["ascents"] = tree_ascent_count(tree, a.r);
      inv.emit(out, payload, kv_rows(payload));
    }
    return 0;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace lukas::cli
