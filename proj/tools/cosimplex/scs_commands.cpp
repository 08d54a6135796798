#include <fstream>
#include <memory>
#include <sstream>

#include "cli.hpp"
#include "cosimplex/cohomology.hpp"
#include "cosimplex/error.hpp"
#include "cosimplex/normal_extension.hpp"

namespace cosimplex::cli {

namespace {

TruncatedSCS load_scs(const std::string& path) { return scs_from_json(read_json_file(path)); }

Json names(const TruncatedSCS& scs, const std::vector<std::size_t>& xs) {
  Json out = Json::array();
  for (auto x : xs) out.push_back(scs.display(x));
  return out;
}

Json coordinates(const TruncatedSCS& scs) {
  Json out = Json::array();
  for (std::size_t x = 0; x < scs.size(); ++x) out.push_back(scs.display(x));
  return out;
}

Json witness_json(const TruncatedSCS& scs, const std::optional<InnovationWitness>& w) {
  if (!w) return nullptr;
  return Json{{"element", scs.display(w->element)},
              {"shift", w->shift},
              {"image", scs.display(w->image)},
              {"image_level", w->image_level}};
}

std::vector<int> parse_ell(const std::string& text) {
  std::vector<int> ell;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(part, &used);
      if (used != part.size() && part.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument(part);
      ell.push_back(v);
    } catch (const std::exception&) {
      throw InputError("ell must be a comma-separated integer list, got \"" + text + "\"");
    }
  }
  if (ell.empty()) throw InputError("ell needs at least ell(0)");
  return ell;
}

void write_or_emit(const Options& opt, const Json& j, const std::string& out) {
  if (out.empty()) {
    emit(opt, j);
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError(out + ": cannot write");
  f << j.dump(2) << '\n';
}

int cmd_validate(const Options& opt, const std::string& path) {
  auto scs = load_scs(path);
  auto rep = validate(scs);
  Json v = Json::array();
  for (const auto& x : rep.violations) v.push_back(Json{{"kind", to_string(x.kind)}, {"detail", x.detail}});
  emit(opt, Json{{"valid", rep.valid}, {"violations", v}, {"truncation_caveats", Json::array()}});
  return verdict(rep.valid);
}

int cmd_saturate(const Options& opt, const std::string& path, const std::string& out) {
  auto res = saturate(load_scs(path));
  auto j = scs_to_json(res.scs);
  j["truncation_caveats"] = res.caveats;
  write_or_emit(opt, j, out);
  return kPass;
}

int cmd_innovations(const Options& opt, const std::string& path) {
  auto scs = load_scs(path);
  Json levels = Json::array();
  for (int k = -1; k <= scs.max_level(); ++k) levels.push_back(Json{{"k", k}, {"elements", names(scs, scs.innovation(k))}});
  emit(opt, Json{{"max_level", scs.max_level()}, {"levels", levels}, {"truncation_caveats", Json::array()}});
  return kPass;
}

int cmd_definetti(const Options& opt, const std::string& path) {
  auto scs = load_scs(path);
  auto rep = check_toy_definetti(scs);
  Json levels = Json::array();
  for (const auto& l : rep.levels) {
    Json e;
    e["n"] = l.n;
    e["shift_n_maps_all_innovations"] = l.shift_n_maps_all_innovations;
    e["saturated_below"] = l.saturated_below;
    e["saturated_below_truncation_limited"] = l.saturated_below_limited;
    e["saturated_below_up_to_n"] = l.saturated_below_up_to_n;
    e["all_shifts_map_d_n"] = l.all_shifts_map_d_n;
    e["top_shift_maps_d_n"] = l.top_shift_maps_d_n;
    e["shift_n_witness"] = witness_json(scs, l.shift_n_witness);
    e["all_shifts_witness"] = witness_json(scs, l.all_shifts_witness);
    e["fixed_not_below"] = l.fixed_not_below ? Json(scs.display(*l.fixed_not_below)) : Json(nullptr);
    levels.push_back(std::move(e));
  }
  Json j;
  j["levels"] = levels;
  j["implications_hold"] = rep.implications_hold;
  j["characterization_holds"] = rep.characterization_holds;
  j["converse_failures"] = rep.converse_failures;
  j["truncation_caveats"] = rep.caveats;
  emit(opt, j);
  return verdict(rep.implications_hold && rep.characterization_holds);
}

int cmd_cohomology(const Options& opt, const std::string& path, std::optional<int> level, bool basis, bool expl) {
  if (opt.scalar != Scalar::Exact) throw InputError("cohomology is computed over the rationals only; drop --scalar float");
  auto scs = load_scs(path);
  auto complex = build_complex(scs);
  auto coh = cohomology(complex);
  const int N = complex.max_level();
  if (level && (*level < -1 || *level > N - 1))
    throw TruncationError("cohomology of level " + std::to_string(*level) + " needs 1 <= level+1 <= N, N = " +
                          std::to_string(N) + " (level N needs shifts on H_N)");
  Json levels = Json::array();
  for (const auto& l : coh.levels) {
    if (level && l.k != *level) continue;
    Json e;
    e["k"] = l.k;
    e["dim_cochains"] = l.dim_cochains;
    e["dim_cocycles"] = l.dim_cocycles;
    e["dim_coboundaries"] = l.dim_coboundaries;
    e["dim_cohomology"] = l.dim_cohomology;
    if (basis) {
      e["cocycles"] = columns_to_json(l.cocycles);
      e["coboundaries"] = columns_to_json(l.coboundaries);
      e["representatives"] = columns_to_json(l.representatives);
    }
    if (expl) {
      bool applies = l.k >= 0 && explicit_formula_applies(complex, l.k);
      e["explicit_formula_applies"] = applies;
      if (applies && basis) e["explicit_cocycles"] = columns_to_json(explicit_cocycles(complex, l.k));
    }
    levels.push_back(std::move(e));
  }
  Json j;
  j["max_level"] = N;
  if (basis) j["coordinates"] = coordinates(scs);
  j["levels"] = levels;
  j["trivial"] = coh.trivial();
  int code = kPass;
  if (expl) {
    auto checks = check_cocycle_identities(complex);
    j["identities"] = report_to_json(checks);
    code = verdict(checks.all_hold());
  }
  j["truncation_caveats"] = coh.caveats;
  emit(opt, j);
  return code;
}

const char* source_name(LabelSource s) {
  switch (s) {
    case LabelSource::Direct: return "direct";
    case LabelSource::EpsilonLemma: return "preimage";
    case LabelSource::Unknown: return "unknown";
  }
  return "unknown";
}

int cmd_labels(const Options& opt, const std::string& path) {
  auto scs = load_scs(path);
  auto table = normal_labels(scs);
  Json rows = Json::array();
  for (std::size_t x = 0; x < scs.size(); ++x) {
    Json e;
    e["element"] = scs.display(x);
    e["level"] = scs.level(x);
    if (table.labels[x]) {
      e["label"] = table.labels[x]->to_string();
      e["rank"] = table.labels[x]->rank();
      e["label_level"] = table.labels[x]->level();
      e["label_level_at_most_level"] = table.labels[x]->level() <= scs.level(x);
    } else {
      e["label"] = nullptr;
    }
    e["source"] = source_name(table.source[x]);
    rows.push_back(std::move(e));
  }
  auto eps = check_epsilon_lemma(scs);
  Json j;
  j["labels"] = rows;
  j["epsilon_lemma"] = report_to_json(eps);
  Json cav = Json::array();
  for (std::size_t x = 0; x < scs.size(); ++x)
    if (!table.labels[x]) cav.push_back("normal label of " + scs.display(x) + " needs shifts above the truncation");
  j["truncation_caveats"] = cav;
  emit(opt, j);
  return verdict(eps.all_hold());
}

int cmd_extend(const Options& opt, const std::string& path, const std::string& out) {
  auto scs = load_scs(path);
  auto ext = minimal_normal_extension(scs);
  Json emb = Json::array();
  for (std::size_t x = 0; x < scs.size(); ++x) emb.push_back(Json::array({scs.display(x), ext.scs.display(ext.embedding[x])}));
  std::size_t layers = 0;
  for (auto c : ext.layer_of) layers = std::max(layers, c + 1);
  Json summary;
  summary["layers"] = layers;
  summary["elements"] = ext.scs.size();
  summary["embedding"] = emb;
  summary["normal"] = is_normal(ext.scs);
  if (out.empty()) summary["scs"] = scs_to_json(ext.scs);
  summary["truncation_caveats"] = ext.caveats;
  if (!out.empty()) write_or_emit(opt, scs_to_json(ext.scs), out);
  emit(opt, summary);
  return kPass;
}

Json invariant_json(const SCSInvariant& inv) {
  Json layers = Json::object();
  for (auto [rank, mult] : inv.layers) layers[std::to_string(rank)] = mult;
  Json classes = Json::array();
  for (const auto& c : inv.classes) {
    Json gens = Json::array();
    for (const auto& [chi, lvl] : c.generators) gens.push_back(Json{{"label", chi.to_string()}, {"level", lvl}});
    Json anti = Json::array();
    for (const auto& chi : c.antichain) anti.push_back(chi.to_string());
    classes.push_back(Json{{"rank", c.rank}, {"generators", gens}, {"antichain", anti}});
  }
  return Json{{"max_level", inv.max_level}, {"normal", inv.normal}, {"layers", layers}, {"classes", classes},
              {"truncation_caveats", inv.caveats}};
}

int cmd_classify(const Options& opt, const std::string& path) {
  emit(opt, invariant_json(classify(load_scs(path))));
  return kPass;
}

int cmd_isomorphic(const Options& opt, const std::string& a, const std::string& b) {
  bool iso = is_isomorphic(load_scs(a), load_scs(b));
  emit(opt, Json{{"isomorphic", iso}, {"truncation_caveats", Json::array()}});
  return kPass;
}

}  // namespace

void add_scs_commands(CLI::App& app, const Options& opt, Dispatch& d) {
  auto* scs = app.add_subcommand("scs", "truncated semi-cosimplicial sets");
  scs->require_subcommand(1);

  auto file_command = [&](const char* name, const char* help, auto body) {
    auto* sub = scs->add_subcommand(name, help);
    auto file = std::make_shared<std::string>();
    sub->add_option("file", *file, "SCS JSON file")->required()->check(CLI::ExistingFile);
    sub->callback([&d, &opt, file, body] { d.action = [&opt, file, body] { return body(opt, *file); }; });
    return sub;
  };

  file_command("validate", "check the structure's axioms", cmd_validate);
  file_command("innovations", "list D_k per level", cmd_innovations);
  file_command("definetti", "saturation versus innovation-shifting, per level", cmd_definetti);
  file_command("labels", "normal labels and the insertion identity", cmd_labels);
  file_command("classify", "isomorphism invariant", cmd_classify);
  file_command("dot", "Graphviz shift-action graph", [](const Options&, const std::string& path) {
    emit_text(shift_graph_dot(load_scs(path)));
    return kPass;
  });

  {
    auto* sub = scs->add_subcommand("saturate", "re-level every element to its normal label level");
    auto file = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    sub->add_option("file", *file)->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", *out, "write the result here");
    sub->callback([&d, &opt, file, out] { d.action = [&opt, file, out] { return cmd_saturate(opt, *file, *out); }; });
  }
  {
    auto* sub = scs->add_subcommand("extend", "minimal normal extension");
    auto file = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    sub->add_option("file", *file)->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", *out, "write the extension SCS here");
    sub->callback([&d, &opt, file, out] { d.action = [&opt, file, out] { return cmd_extend(opt, *file, *out); }; });
  }
  {
    auto* sub = scs->add_subcommand("cohomology", "exact cohomology of the cochain complex");
    auto file = std::make_shared<std::string>();
    auto level = std::make_shared<std::optional<int>>();
    auto basis = std::make_shared<bool>(false);
    auto expl = std::make_shared<bool>(false);
    sub->add_option("file", *file)->required()->check(CLI::ExistingFile);
    sub->add_option("--level", *level, "report one level only");
    sub->add_flag("--basis", *basis, "include cocycle, coboundary and representative bases");
    sub->add_flag("--explicit", *expl, "cross-check the explicit cocycle formula");
    sub->callback([&d, &opt, file, level, basis, expl] {
      d.action = [&opt, file, level, basis, expl] { return cmd_cohomology(opt, *file, *level, *basis, *expl); };
    });
  }
  {
    auto* sub = scs->add_subcommand("isomorphic", "compare isomorphism invariants");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    sub->add_option("a", *a)->required()->check(CLI::ExistingFile);
    sub->add_option("b", *b)->required()->check(CLI::ExistingFile);
    sub->callback([&d, &opt, a, b] { d.action = [&opt, a, b] { return cmd_isomorphic(opt, *a, *b); }; });
  }
  {
    auto* gen = scs->add_subcommand("gen", "generate built-in structures");
    gen->require_subcommand(1);
    auto* proto = gen->add_subcommand("prototypical", "X_k = {0..k} with the prototypical shifts");
    auto n1 = std::make_shared<int>(0);
    proto->add_option("N", *n1, "truncation level")->required()->check(CLI::NonNegativeNumber);
    proto->callback([&d, &opt, n1] {
      d.action = [&opt, n1] {
        emit(opt, scs_to_json(prototypical(*n1)));
        return kPass;
      };
    });
    auto* ell = gen->add_subcommand("ell", "prototypical shifts with element n placed at level ell(n)");
    auto values = std::make_shared<std::string>();
    auto n2 = std::make_shared<int>(0);
    ell->add_option("ell", *values, "comma-separated ell(0), ell(1), ...; continued by ell(n) = n")->required();
    ell->add_option("N", *n2, "truncation level")->required()->check(CLI::NonNegativeNumber);
    ell->callback([&d, &opt, values, n2] {
      d.action = [&opt, values, n2] {
        emit(opt, scs_to_json(from_ell(parse_ell(*values), *n2)));
        return kPass;
      };
    });
  }
}

void add_graph_commands(CLI::App& app, const Options&, Dispatch& d) {
  auto* graph = app.add_subcommand("graph", "the label category");
  graph->require_subcommand(1);
  auto* dot = graph->add_subcommand("dot", "Graphviz skeleton of labels up to a rank and level");
  auto rank = std::make_shared<int>(2);
  auto level = std::make_shared<int>(4);
  dot->add_option("--rank", *rank, "maximal rank")->check(CLI::NonNegativeNumber);
  dot->add_option("--level", *level, "maximal level")->check(CLI::Range(-1, 30));
  dot->callback([&d, rank, level] {
    d.action = [rank, level] {
      emit_text(skeleton_dot(*rank, *level));
      return kPass;
    };
  });
}

}  // namespace cosimplex::cli
