#include <memory>

#include "cli.hpp"
#include "cosimplex/error.hpp"

namespace cosimplex::cli {

namespace {

template <class F>
int with_scalar(const Options& opt, F&& body) {
  if (opt.scalar == Scalar::Exact) return body.template operator()<Rational>();
  return body.template operator()<double>();
}

template <class T>
SpreadableFamily<T> load_family(const std::string& path) {
  return family_from_json<T>(read_json_file(path));
}

template <class T>
Json angle_json(const AngleReport<T>& r) {
  Json j;
  j["angle"] = matrix_to_json(r.angle);
  j["isometric"] = r.isometric;
  j["spreadable"] = r.spreadable;
  j["witness"] = r.witness ? Json::array({r.witness->first, r.witness->second}) : Json(nullptr);
  if (r.deviation != 0.0) j["deviation"] = r.deviation;
  j["self_adjoint"] = r.self_adjoint;
  j["positive"] = r.positive;
  j["contraction"] = r.contraction;
  j["certificate"] = r.certificate;
  return j;
}

int from_c(const Options& opt, const std::string& path, int n) {
  auto j = read_json_file(path);
  const Json& c = j.is_object() ? j.at("C") : j;
  if (opt.scalar == Scalar::Exact) {
    auto fam = from_contraction_exact(matrix_from_json<Rational>(c, "C"), n);
    if (!fam)
      throw PreconditionError("square roots of C are not rational (C must be diagonal with c and 1-c rational "
                              "squares); rerun with --scalar float");
    emit(opt, family_to_json(*fam));
  } else {
    emit(opt, family_to_json(from_contraction(matrix_from_json<double>(c, "C"), n, opt.tol)));
  }
  return kPass;
}

template <class T>
int angle(const Options& opt, const std::string& path) {
  auto rep = operator_angle(load_family<T>(path), opt.tol);
  auto j = angle_json(rep);
  j["truncation_caveats"] = Json::array();
  emit(opt, j);
  return verdict(rep.isometric && rep.spreadable && rep.positive && rep.contraction);
}

template <class T>
int minsch(const Options& opt, const std::string& path) {
  auto t = minimal_sch(load_family<T>(path), opt.tol);
  auto rep = check_tower(t);
  Json j;
  j["tower"] = tower_to_json(t);
  j["checks"] = report_to_json(rep);
  j["truncation_caveats"] = rep.caveats;
  emit(opt, j);
  return verdict(rep.all_hold());
}

template <class T>
int theorem_c(const Options& opt, const std::string& path) {
  auto rep = check_theorem_C(load_family<T>(path), opt.tol);
  emit(opt, report_to_json(rep));
  return verdict(rep.all_hold());
}

int equiv(const Options& opt, const std::string& a, const std::string& b) {
  FamilyEquivalence res = opt.scalar == Scalar::Exact
                              ? family_equivalence(load_family<Rational>(a), load_family<Rational>(b))
                              : family_equivalence(load_family<double>(a), load_family<double>(b), opt.tol);
  Json j;
  j["equivalent"] = res.equivalent;
  j["exact_decision"] = res.exact_decision;
  j[res.exact_decision ? "charpoly_a" : "spectrum_a"] = res.spectrum_a;
  j[res.exact_decision ? "charpoly_b" : "spectrum_b"] = res.spectrum_b;
  if (res.kernel_unitary) j["kernel_unitary"] = matrix_to_json(*res.kernel_unitary);
  if (res.intertwiner) j["intertwiner"] = matrix_to_json(*res.intertwiner);
  j["checks"] = report_to_json(res.checks);
  j["truncation_caveats"] = res.checks.caveats;
  emit(opt, j);
  return verdict(res.checks.all_hold() || !res.equivalent);
}

}  // namespace

void add_spread_commands(CLI::App& app, const Options& opt, Dispatch& d) {
  auto* spread = app.add_subcommand("spread", "spreadable families of isometries");
  spread->require_subcommand(1);

  {
    auto* sub = spread->add_subcommand("from-c", "family with a prescribed angle C");
    auto file = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    sub->add_option("file", *file, "JSON matrix, or {\"C\": matrix}")->required()->check(CLI::ExistingFile);
    sub->add_option("-n,--max-index", *n, "last index N of iota_0..iota_N")->required()->check(CLI::NonNegativeNumber);
    sub->callback([&d, &opt, file, n] { d.action = [&opt, file, n] { return from_c(opt, *file, *n); }; });
  }
  auto file_command = [&](const char* name, const char* help, auto body) {
    auto* sub = spread->add_subcommand(name, help);
    auto file = std::make_shared<std::string>();
    sub->add_option("file", *file, "family JSON file")->required()->check(CLI::ExistingFile);
    sub->callback([&d, &opt, file, body] { d.action = [&opt, file, body] { return body(opt, *file); }; });
  };
  file_command("angle", "operator angle and spreadability", [](const Options& o, const std::string& f) {
    return with_scalar(o, [&]<class T>() { return angle<T>(o, f); });
  });
  file_command("minsch", "minimal tower generated by the family", [](const Options& o, const std::string& f) {
    return with_scalar(o, [&]<class T>() { return minsch<T>(o, f); });
  });
  file_command("theoremC", "conditional orthogonality and the angle identities",
               [](const Options& o, const std::string& f) {
                 return with_scalar(o, [&]<class T>() { return theorem_c<T>(o, f); });
               });
  {
    auto* sub = spread->add_subcommand("equiv", "unitary equivalence of spreadable families");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    sub->add_option("a", *a)->required()->check(CLI::ExistingFile);
    sub->add_option("b", *b)->required()->check(CLI::ExistingFile);
    sub->callback([&d, &opt, a, b] { d.action = [&opt, a, b] { return equiv(opt, *a, *b); }; });
  }
  {
    auto* gen = spread->add_subcommand("gen", "built-in families");
    gen->require_subcommand(1);
    auto* l2 = gen->add_subcommand("l2", "e_{-1} + e_k, k = 0..N, in coordinates -1..N");
    auto n = std::make_shared<int>(0);
    l2->add_option("N", *n)->required()->check(CLI::NonNegativeNumber);
    l2->callback([&d, &opt, n] {
      d.action = [&opt, n] {
        emit(opt, family_to_json(l2_example(*n)));
        return kPass;
      };
    });
  }
}

}  // namespace cosimplex::cli
