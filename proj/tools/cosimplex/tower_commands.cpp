#include <memory>

#include "cli.hpp"
#include "cosimplex/error.hpp"
#include "cosimplex/hessenberg.hpp"

namespace cosimplex::cli {

namespace {

template <class T>
Tower<T> load_tower(const Options& opt, const std::string& path) {
  return tower_from_any<T>(read_json_file(path), opt.tol);
}

// Runs body<Rational> or body<double> according to --scalar.
template <class F>
int with_scalar(const Options& opt, F&& body) {
  if (opt.scalar == Scalar::Exact) return body.template operator()<Rational>();
  return body.template operator()<double>();
}

template <class T>
int tower_check(const Options& opt, const std::string& path) {
  auto t = load_tower<T>(opt, path);
  auto rep = check_tower(t);
  auto j = report_to_json(rep);
  j["max_level"] = t.max_level();
  Json dims = Json::array();
  for (int k = -1; k <= t.max_level(); ++k) dims.push_back(t.dim(k));
  j["dims"] = dims;
  emit(opt, j);
  return verdict(rep.all_hold());
}

template <class T>
int tower_definetti(const Options& opt, const std::string& path) {
  auto t = load_tower<T>(opt, path);
  auto rep = check_toy_definetti(t);
  Json levels = Json::array();
  for (const auto& l : rep.levels)
    levels.push_back(Json{{"n", l.n},
                          {"shift_n_maps_all_innovations", l.shift_n_maps_all_innovations},
                          {"saturated_below", l.saturated_below},
                          {"saturated_below_up_to_n", l.saturated_below_up_to_n},
                          {"all_shifts_map_d_n", l.all_shifts_map_d_n},
                          {"top_shift_maps_d_n", l.top_shift_maps_d_n},
                          {"fixed_space_beyond_top", l.fixed_space_beyond_top}});
  Json j;
  j["levels"] = levels;
  j["implications_hold"] = rep.implications_hold;
  j["characterization_holds"] = rep.characterization_holds;
  j["projection_identity_holds"] = rep.projection_identity_holds;
  j["converse_failures"] = rep.converse_failures;
  j["truncation_caveats"] = rep.caveats;
  emit(opt, j);
  return verdict(rep.implications_hold && rep.characterization_holds && rep.projection_identity_holds);
}

template <class T>
int tower_labels(const Options& opt, const std::string& path, bool basis) {
  auto t = load_tower<T>(opt, path);
  Json subs = Json::array();
  for (const auto& s : labeled_subspaces(t, t.max_level())) {
    Json e{{"label", s.label.to_string()}, {"level", s.label.level()}, {"dim", s.basis.cols()}};
    if (basis) e["basis"] = columns_to_json(s.basis);
    subs.push_back(std::move(e));
  }
  Json roots = Json::array();
  for (auto d : root_dimensions(t)) roots.push_back(d);
  auto span = check_label_span(t, t.max_level());
  Json j;
  j["root_dimensions"] = roots;
  j["labeled_subspaces"] = subs;
  j["span"] = report_to_json(span);
  j["truncation_caveats"] = span.caveats;
  emit(opt, j);
  return verdict(span.all_hold());
}

template <class T>
int tower_normal(const Options& opt, const std::string& path) {
  auto t = load_tower<T>(opt, path);
  auto rep = check_normal(t);
  Json crit;
  crit["adjoint_identity"] = {{"holds", rep.adjoint_identity}, {"witness", rep.adjoint_witness}};
  crit["complement_criterion"] = {{"holds", rep.complement_criterion}, {"witness", rep.complement_witness}};
  crit["orthogonal_labels"] = {{"holds", rep.orthogonal_labels}, {"witness", rep.orthogonality_witness}};
  Json j;
  j["verdict"] = rep.normal() ? "normal" : "non-normal";
  j["criteria_agree"] = rep.agree();
  j["criteria"] = crit;
  if (rep.normal()) j["decomposition"] = report_to_json(rep.decomposition);
  j["truncation_caveats"] = rep.decomposition.caveats;
  emit(opt, j);
  return verdict(rep.agree() && rep.decomposition.all_hold());
}

template <class T>
int tower_symrep(const Options& opt, const std::string& path) {
  auto data = build_symmetric_rep(load_tower<T>(opt, path));
  auto rep = check_symmetric_rep(data);
  auto j = report_to_json(rep);
  j["generators"] = data.count();
  emit(opt, j);
  return verdict(rep.all_hold());
}

template <class T>
int tower_hessenberg(const Options& opt, const std::string& path, bool negative) {
  auto data = build_symmetric_rep(load_tower<T>(opt, path));
  if (negative) data = break_commutation(data);
  auto rep = check_hessenberg(data);
  Json j;
  j["negative_control"] = negative;
  j["conditions"] = {{"shift_intertwines", rep.condition_shift_intertwines},
                     {"adjacent", rep.condition_adjacent},
                     {"braid_on_range", rep.condition_braid_on_range}};
  j["braided_conditions_agree"] = rep.braided_conditions_agree();
  j["checks"] = report_to_json(rep.checks);
  j["truncation_caveats"] = rep.checks.caveats;
  emit(opt, j);
  // The negative control is expected to break (C); its verdict is the agreement of the conditions.
  return verdict(negative ? rep.braided_conditions_agree() : rep.checks.all_hold());
}

template <class T>
int tower_equiv(const Options& opt, const std::string& a, const std::string& b) {
  auto res = tower_equivalence(load_tower<T>(opt, a), load_tower<T>(opt, b));
  Json da = Json::array(), db = Json::array();
  for (auto x : res.dims_a) da.push_back(x);
  for (auto x : res.dims_b) db.push_back(x);
  Json j;
  j["equivalent"] = res.equivalent;
  j["root_dimensions_a"] = da;
  j["root_dimensions_b"] = db;
  if (res.intertwiner) j["intertwiner"] = matrix_to_json(*res.intertwiner);
  j["checks"] = report_to_json(res.checks);
  j["truncation_caveats"] = res.checks.caveats;
  emit(opt, j);
  return verdict(res.checks.all_hold());
}

}  // namespace

void add_tower_commands(CLI::App& app, const Options& opt, Dispatch& d) {
  auto* tower = app.add_subcommand("tower", "truncated Hilbert towers (tower JSON or SCS JSON)");
  tower->require_subcommand(1);

  auto file_command = [&](const char* name, const char* help) {
    auto* sub = tower->add_subcommand(name, help);
    auto file = std::make_shared<std::string>();
    sub->add_option("file", *file, "tower or SCS JSON file")->required()->check(CLI::ExistingFile);
    return std::make_pair(sub, file);
  };

  {
    auto [sub, file] = file_command("check", "nesting, isometry, adaptedness and shift relations");
    sub->callback([&d, &opt, file = file] {
      d.action = [&opt, file] { return with_scalar(opt, [&]<class T>() { return tower_check<T>(opt, *file); }); };
    });
  }
  {
    auto [sub, file] = file_command("definetti", "saturation versus innovation-shifting, per level");
    sub->callback([&d, &opt, file = file] {
      d.action = [&opt, file] { return with_scalar(opt, [&]<class T>() { return tower_definetti<T>(opt, *file); }); };
    });
  }
  {
    auto [sub, file] = file_command("labels", "root spaces and labeled subspaces");
    auto basis = std::make_shared<bool>(false);
    sub->add_flag("--basis", *basis, "include subspace bases");
    sub->callback([&d, &opt, file = file, basis] {
      d.action = [&opt, file, basis] {
        return with_scalar(opt, [&]<class T>() { return tower_labels<T>(opt, *file, *basis); });
      };
    });
  }
  {
    auto [sub, file] = file_command("normal", "the three normality criteria");
    sub->callback([&d, &opt, file = file] {
      d.action = [&opt, file] { return with_scalar(opt, [&]<class T>() { return tower_normal<T>(opt, *file); }); };
    });
  }
  {
    auto [sub, file] = file_command("symrep", "symmetric-group unitaries of a normal tower");
    sub->callback([&d, &opt, file = file] {
      d.action = [&opt, file] { return with_scalar(opt, [&]<class T>() { return tower_symrep<T>(opt, *file); }); };
    });
  }
  {
    auto [sub, file] = file_command("hessenberg", "Hessenberg factorization and braided conditions");
    auto negative = std::make_shared<bool>(false);
    sub->add_flag("--break-commutation", *negative, "replace u_1 by a control that violates (C)");
    sub->callback([&d, &opt, file = file, negative] {
      d.action = [&opt, file, negative] {
        return with_scalar(opt, [&]<class T>() { return tower_hessenberg<T>(opt, *file, *negative); });
      };
    });
  }
  {
    auto* sub = tower->add_subcommand("equiv", "unitary equivalence of normal towers");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    sub->add_option("a", *a)->required()->check(CLI::ExistingFile);
    sub->add_option("b", *b)->required()->check(CLI::ExistingFile);
    sub->callback([&d, &opt, a, b] {
      d.action = [&opt, a, b] { return with_scalar(opt, [&]<class T>() { return tower_equiv<T>(opt, *a, *b); }); };
    });
  }
}

}  // namespace cosimplex::cli
