// Command-line front end: build numerals, evaluate and classify formula codes,
// verify recipes.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "contnum/acceptance.hpp"
#include "contnum/engine.hpp"
#include "contnum/error.hpp"
#include "contnum/formula.hpp"
#include "contnum/numerals.hpp"
#include "contnum/structures.hpp"

using namespace contnum;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct Options {
  std::size_t depth = 256;
  unsigned tol = 6;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::vector<std::string> suite;
  bool estimate = false;

  std::string dyadic_value;
  std::string flavor;
  std::string recipe;
  std::string code;
  std::string structure;
  std::vector<int> criteria;
};

bool structured(const Options& o) { return o.format == "structured"; }

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

ordered_json to_json(const Enclosure& e) { return {{"lo", e.lo().str()}, {"hi", e.hi().str()}}; }

std::string fixed(double x) {
  std::ostringstream os;
  os << std::showpos << std::scientific << std::setprecision(3) << x;
  return os.str();
}

std::vector<FiniteMetricSpace> spaces_for(const Options& o) {
  if (o.suite.empty()) return builtin_suite(o.seed);
  std::vector<FiniteMetricSpace> out;
  for (const auto& p : o.suite) out.push_back(load_space_file(p));
  return out;
}

int run_dyadic(const Options& o) {
  const Formula f = dyadic_numeral(Dyadic::parse(o.dyadic_value), parse_flavor(o.flavor));
  if (structured(o)) {
    emit({{"value", o.dyadic_value}, {"flavor", o.flavor}, {"code", serialize(f)}});
  } else {
    std::cout << serialize(f) << "\n";
  }
  return kOk;
}

int run_build(const Options& o) {
  const NumeralRecipe recipe = NumeralRecipe::parse(o.recipe);
  const Formula f = build_numeral(recipe);
  if (structured(o)) {
    emit({{"recipe", recipe.descriptor()}, {"code", serialize(f)}});
  } else {
    std::cout << serialize(f) << "\n";
  }
  return kOk;
}

int run_classify(const Options& o) {
  const Rank r = classify(parse_formula(o.code));
  if (structured(o)) {
    emit({{"code", o.code}, {"rank", r.str()}});
  } else {
    std::cout << r.str() << "\n";
  }
  return kOk;
}

int run_eval(const Options& o) {
  const Formula f = parse_formula(o.code);
  std::vector<FiniteMetricSpace> spaces;
  if (!o.structure.empty()) {
    spaces.push_back(load_space_file(o.structure));
  } else {
    spaces = spaces_for(o);
  }
  const TruncationSchedule schedule = TruncationSchedule::nested(o.depth);
  ordered_json rows = ordered_json::array();
  for (const auto& space : spaces) {
    Evaluator ev(space, schedule);
    const Enclosure e = ev.enclosure(f);
    ordered_json row = {{"space", space.name}, {"enclosure", to_json(e)}};
    std::string line = e.str();
    if (o.estimate) {
      const UnitValue v = ev.truncated_value(f);
      row["estimate"] = v.str();
      line += " estimate " + v.str();
    }
    row["points_visited"] = ev.points_visited();
    rows.push_back(std::move(row));
    if (!structured(o)) {
      if (spaces.size() > 1) std::cout << space.name << ": ";
      std::cout << line << "\n";
    }
  }
  if (structured(o)) emit({{"code", serialize(f)}, {"schedule", schedule.depths}, {"results", rows}});
  return kOk;
}

int run_verify(const Options& o) {
  const NumeralRecipe recipe = NumeralRecipe::parse(o.recipe);
  VerifyOptions vo;
  vo.depth = o.depth;
  vo.tolerance_bits = o.tol;
  vo.seed = o.seed;
  vo.spaces = spaces_for(o);
  const VerifyResult r = verify_recipe(recipe, vo);

  if (structured(o)) {
    ordered_json indep = ordered_json::array();
    for (std::size_t i = 0; i < r.independence.spaces.size(); ++i) {
      indep.push_back({{"space", r.independence.spaces[i]}, {"enclosure", to_json(r.independence.enclosures[i])}});
    }
    ordered_json conv = ordered_json::array();
    for (const auto& row : r.convergence.rows) {
      ordered_json j = {{"depth", row.depth}, {"enclosure", to_json(row.enclosure)}, {"active", row.active.str()}};
      if (row.distance) j["distance"] = *row.distance;
      if (row.sound) j["sound"] = *row.sound;
      if (row.estimate) j["estimate"] = row.estimate->str();
      conv.push_back(std::move(j));
    }
    ordered_json out = {
        {"recipe", r.recipe},
        {"independence", {{"agree", r.independence.all_agree}, {"spaces", indep}}},
        {"classification",
         {{"pass", r.classification.pass},
          {"expected", r.classification.expected.str()},
          {"actual", r.classification.actual ? r.classification.actual->str() : ""},
          {"message", r.classification.message}}},
        {"convergence",
         {{"active", to_string(r.convergence.active)},
          {"monotone", r.convergence.monotone},
          {"sound", r.convergence.sound},
          {"rows", conv}}},
    };
    out["within_tolerance"] = r.within_tolerance ? ordered_json(*r.within_tolerance) : ordered_json(nullptr);
    out["notes"] = r.notes;
    out["passed"] = r.passed;
    emit(out);
  } else {
    std::cout << "recipe         " << r.recipe << "\n";
    std::cout << "classification " << (r.classification.pass ? "pass" : "FAIL") << ": " << r.classification.message
              << "\n";
    std::cout << "independence   " << (r.independence.all_agree ? "pass" : "FAIL") << " over "
              << r.independence.spaces.size() << " spaces\n";
    for (std::size_t i = 0; i < r.independence.spaces.size(); ++i) {
      std::cout << "  " << std::left << std::setw(16) << r.independence.spaces[i] << r.independence.enclosures[i].str()
                << "\n";
    }
    std::cout << "convergence    " << to_string(r.convergence.active) << " bound, "
              << (r.convergence.monotone ? "monotone" : "NOT monotone") << ", "
              << (r.convergence.sound ? "sound" : "NOT sound") << "\n";
    for (const auto& row : r.convergence.rows) {
      std::cout << "  depth " << std::left << std::setw(6) << row.depth << std::setw(28) << row.enclosure.str();
      if (row.distance) std::cout << " distance " << fixed(*row.distance);
      if (row.estimate) std::cout << " estimate " << row.estimate->str();
      std::cout << "\n";
    }
    std::cout << "tolerance      ";
    if (r.within_tolerance) {
      std::cout << (*r.within_tolerance ? "pass" : "FAIL") << " (2^-" << o.tol << ")\n";
    } else {
      std::cout << "not certified\n";
    }
    for (const auto& n : r.notes) std::cout << "note           " << n << "\n";
    std::cout << (r.passed ? "PASS" : "FAIL") << "\n";
  }
  return r.passed ? kOk : kCheckFailed;
}

int run_demo(const Options& o) {
  AcceptanceOptions ao;
  ao.seed = o.seed;
  ao.only.insert(o.criteria.begin(), o.criteria.end());
  const auto results = run_acceptance(ao);
  bool all = true;
  ordered_json rows = ordered_json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    if (structured(o)) {
      rows.push_back({{"criterion", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
    } else {
      std::cout << "criterion " << r.id << " " << (r.passed ? "PASS" : "FAIL") << " " << r.title << ": " << r.detail
                << "\n";
    }
  }
  if (structured(o)) emit({{"criteria", rows}, {"passed", all}});
  return all ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerals for reals in continuous logic: build, evaluate, classify and verify"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--seed", o.seed, "Seed for the randomized suite space");
  };
  const auto depth = [&](CLI::App* sub) {
    sub->add_option("--depth", o.depth, "Outer truncation depth N (inner families read 4N)")
        ->check(CLI::PositiveNumber);
  };
  const auto suite = [&](CLI::App* sub) {
    sub->add_option("--suite", o.suite, "Structure files replacing the builtin suite")->check(CLI::ExistingFile);
  };

  auto* dy = app.add_subcommand("dyadic", "Print the numeral of a dyadic rational");
  dy->add_option("value", o.dyadic_value, "Dyadic in [0, 1], e.g. 3/4")->required();
  dy->add_option("flavor", o.flavor, "exists or forall")->required();
  common(dy);

  auto* build = app.add_subcommand("build", "Print the numeral built from a recipe");
  build->add_option("recipe", o.recipe, "(numeral SIDE LEVEL SOURCE)")->required();
  common(build);

  auto* ev = app.add_subcommand("eval", "Enclose the value of a sentence");
  ev->add_option("code", o.code, "Formula code")->required();
  ev->add_option("structure", o.structure, "Structure file (default: the builtin suite)")->check(CLI::ExistingFile);
  ev->add_flag("--estimate", o.estimate, "Also print the uncertified truncated value");
  depth(ev);
  suite(ev);
  common(ev);

  auto* ver = app.add_subcommand("verify", "Check independence, convergence and classification of a recipe");
  ver->add_option("recipe", o.recipe, "(numeral SIDE LEVEL SOURCE)")->required();
  ver->add_option("--tol", o.tol, "Tolerance exponent k (2^-k)");
  depth(ver);
  suite(ver);
  common(ver);

  auto* cls = app.add_subcommand("classify", "Print the Sigma/Pi rank of a formula code");
  cls->add_option("code", o.code, "Formula code")->required();
  common(cls);

  auto* demo = app.add_subcommand("demo", "Run the acceptance corpus");
  demo->add_option("--criterion", o.criteria, "Only these criteria");
  common(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*dy) return run_dyadic(o);
    if (*build) return run_build(o);
    if (*ev) return run_eval(o);
    if (*ver) return run_verify(o);
    if (*cls) return run_classify(o);
    if (*demo) return run_demo(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Inconsistent ? kCheckFailed : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
