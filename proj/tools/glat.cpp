// Command-line front end: JSON specs in, verdicts with certificates out.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "glat/cohomology.hpp"
#include "glat/io.hpp"

using namespace glat;

namespace {

struct CommonOpts {
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 1;
  int bound_subgroups = kDefaultGroupBound;
  int bound_h2 = 24;
  std::string format = "json";
  bool strict = false;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--seed", c.seed, "seed for randomized searches")->each([&](std::string) { c.seed_set = true; });
  cmd->add_option("--jobs", c.jobs, "parallel batch items")->check(CLI::PositiveNumber);
  cmd->add_option("--bound-subgroups", c.bound_subgroups, "largest group order for subgroup enumeration");
  cmd->add_option("--bound-h2", c.bound_h2, "largest group order for degree-two cohomology");
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "md"}));
  cmd->add_flag("--strict", c.strict, "exit 2 on unknown verdicts");
  cmd->add_option("--out", c.out, "write the report to a file instead of stdout");
}

std::uint64_t effective_seed(const CommonOpts& c) {
  if (c.seed_set) return c.seed;
  if (const char* env = std::getenv("GLATTICE_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

ClassifyOptions classify_options(const CommonOpts& c) {
  ClassifyOptions opt;
  opt.resolution.subgroup_bound = c.bound_subgroups;
  opt.cohomology.h2_group = c.bound_h2;
  opt.witness.seed = effective_seed(c);
  opt.witness.subgroup_bound = c.bound_subgroups;
  return opt;
}

void emit(const CommonOpts& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(c.out);
    if (!f) throw input_error("cannot write to " + c.out);
    f << text << "\n";
  }
}

int run_group_info(const std::string& group_file, const CommonOpts& c) {
  auto g = group_from_json(load_json_file(group_file), c.bound_subgroups);
  Json j;
  j["id"] = g->id();
  j["degree"] = g->degree();
  j["order"] = g->order();
  Json classes = Json::array();
  for (const auto& s : subgroups_up_to_conjugacy(g, c.bound_subgroups)) {
    Json sj;
    sj["order"] = s.order();
    sj["index"] = g->order() / s.order();
    sj["normal"] = s.is_normal();
    sj["cyclic"] = s.is_cyclic();
    sj["elements"] = s.elements;
    classes.push_back(std::move(sj));
  }
  j["subgroup_classes"] = std::move(classes);
  Json sylows;
  for (Int p : prime_divisors(g->order())) {
    Subgroup s = sylow_subgroup(g, p);
    sylows[std::to_string(p)] = Json{{"order", s.order()}, {"cyclic", s.is_cyclic()}};
  }
  j["sylow_subgroups"] = std::move(sylows);
  if (c.format == "md") {
    std::ostringstream os;
    os << "# group " << g->id() << "\n\norder " << g->order() << ", degree " << g->degree() << "\n\n";
    os << "| class | order | normal | cyclic |\n|---|---|---|---|\n";
    int idx = 0;
    for (const auto& s : j["subgroup_classes"])
      os << "| " << idx++ << " | " << s["order"] << " | " << s["normal"] << " | " << s["cyclic"] << " |\n";
    emit(c, os.str());
  } else {
    emit(c, j.dump(2));
  }
  return 0;
}

int run_lattice_cohomology(const std::string& group_file, const std::string& lattice_file,
                           const std::string& subgroup_file, const CommonOpts& c) {
  auto g = group_from_json(load_json_file(group_file), c.bound_subgroups);
  GLattice m = lattice_from_json(load_json_file(lattice_file), g);
  Subgroup h = subgroup_file.empty() ? full_subgroup(g) : subgroup_from_json(load_json_file(subgroup_file), g);
  CohomologyBounds cb;
  cb.h2_group = c.bound_h2;
  Json j;
  j["rank"] = m.rank();
  auto [h0rank, basis] = h0(m, h);
  j["h0"] = Json{{"rank", h0rank}, {"basis", matrix_to_json(basis)}};
  j["h1"] = abelian_to_json(h1(m, h, cb));
  j["tate_h_minus1"] = abelian_to_json(tate_h_minus1(m, h));
  if (h.order() <= cb.h2_group) j["h2"] = abelian_to_json(h2(m, h, cb));
  j["flabby"] = is_flabby(m, c.bound_subgroups);
  j["coflabby"] = is_coflabby(m, c.bound_subgroups, cb);
  if (m.group()->order() <= cb.h2_group) j["sha2_omega"] = abelian_to_json(sha2_omega_direct(m, cb));
  emit(c, j.dump(2));
  return 0;
}

int run_pord(const std::string& group_file, const std::string& lattice_file, const CommonOpts& c) {
  auto g = group_from_json(load_json_file(group_file), c.bound_subgroups);
  GLattice m = lattice_from_json(load_json_file(lattice_file), g);
  ResolutionOptions ro;
  ro.subgroup_bound = c.bound_subgroups;
  PermutationOrderResult r = permutation_order_full(m, ro);
  Json j;
  j["pord"] = r.value;
  Json locals;
  for (Int p : prime_divisors(g->order())) locals[std::to_string(p)] = local_permutation_order(m, p, ro);
  j["local"] = std::move(locals);
  j["factor_into_permutation"] = matrix_to_json(r.into_permutation);
  j["factor_back"] = matrix_to_json(r.back);
  j["resolution"] = resolution_to_json(r.resolution);
  emit(c, j.dump(2));
  return 0;
}

int run_classify(const std::vector<std::string>& spec_files, const std::string& group_file,
                 const std::string& subgroup_file, const CommonOpts& c, bool hasse_wording) {
  ClassifyOptions opt = classify_options(c);
  std::vector<EtaleSpec> specs;
  for (const auto& f : spec_files) specs.push_back(etale_spec_from_json(load_json_file(f), c.bound_subgroups));
  if (!group_file.empty()) {
    auto g = group_from_json(load_json_file(group_file), c.bound_subgroups);
    Subgroup h = subgroup_file.empty() ? trivial_subgroup(g) : subgroup_from_json(load_json_file(subgroup_file), g);
    specs.push_back(make_etale_spec(g, h));
  }
  if (specs.empty()) throw input_error("classify: no spec given");

  std::vector<ClassificationReport> reports(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  int jobs = std::max(1, c.jobs);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      try {
        reports[i] = classify_norm_one(specs[i], opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs == 1 || specs.size() == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  bool any_unknown = false;
  Json out = Json::array();
  std::ostringstream md;
  for (const auto& rep : reports) {
    if (rep.verdicts.stably_rational == Tri::unknown) any_unknown = true;
    Json j = classification_to_json(rep);
    if (hasse_wording) {
      Json h;
      h["obstruction_group"] = abelian_to_json(rep.verdicts.sha2_omega);
      h["interpretation"] =
          rep.verdicts.sha2_omega.trivial()
              ? "the obstruction group vanishes: over a global field the torus has weak approximation and the "
                "Hasse norm principle holds for the algebra"
              : "the obstruction group is nonzero: over a suitable global field the Hasse norm principle can fail";
      j["hasse"] = std::move(h);
    }
    out.push_back(std::move(j));
    md << classification_to_markdown(rep) << "\n";
  }
  if (c.format == "md")
    emit(c, md.str());
  else
    emit(c, specs.size() == 1 ? out[0].dump(2) : out.dump(2));
  if (any_unknown && c.strict) return 2;
  return 0;
}

int run_tensor_check(const std::string& mode, const std::string& a_file, const std::string& b_file,
                     const CommonOpts& c) {
  ClassifyOptions opt = classify_options(c);
  EtaleSpec a = etale_spec_from_json(load_json_file(a_file), c.bound_subgroups);
  EtaleSpec b = etale_spec_from_json(load_json_file(b_file), c.bound_subgroups);
  Json j;
  bool any_unknown = false;
  if (mode == "split") {
    // both specs must live over one group
    if (a.joint.group->order() != b.joint.group->order() ||
        a.joint.group->elements() != b.joint.group->elements())
      throw input_error("tensor-check split: both specs must share the same joint group");
    GSet x = etale_gset(a);
    GSet yb = etale_gset(b);
    GSet y;
    y.group = x.group;
    y.size = yb.size;
    y.labels = yb.labels;
    y.act.assign(x.group->order(), std::vector<int>(yb.size));
    for (int e = 0; e < x.group->order(); ++e) y.act[e] = yb.act[x.group->index_of(b.joint.group->element(e))];
    ProductSplittingReport rep = product_splitting_check(x, y);
    j["hypothesis_ok"] = rep.hypothesis_ok;
    j["x_orbit_sizes"] = rep.x_sizes;
    j["y_orbit_sizes"] = rep.y_sizes;
    j["image_matches_product_ideal"] = rep.image_matches_product_ideal;
    j["collapsed_order"] = rep.collapsed_order;
    if (rep.isomorphism) j["isomorphism"] = matrix_to_json(*rep.isomorphism);
  } else if (mode == "rationality") {
    TensorRationalityReport rep = tensor_rationality_check(a, b, opt);
    if (rep.product.stably_rational == Tri::unknown ||
        rep.tensor_of_chevalleys.stably_rational == Tri::unknown)
      any_unknown = true;
    j["hypothesis_ok"] = rep.hypothesis_ok;
    j["factor_a"] = classification_to_json(rep.factor_a);
    j["factor_b"] = classification_to_json(rep.factor_b);
    j["product_retract_rational"] = rep.product.retract_rational;
    j["product_stably_rational"] = to_string(rep.product.stably_rational);
    j["tensor_retract_rational"] = rep.tensor_of_chevalleys.retract_rational;
    j["class_identity_ok"] = rep.class_identity_ok;
    j["invertibility_identity_ok"] = rep.invertibility_identity_ok;
    j["conclusions_consistent"] = rep.conclusions_consistent;
    j["theorem_stable_conclusion"] = to_string(rep.theorem_stable_conclusion);
    j["theorem_retract_conclusion"] = to_string(rep.theorem_retract_conclusion);
  } else if (mode == "converse") {
    ConverseReport rep = direct_product_converse_check(a, b, opt);
    j["restriction_isomorphism_ok"] = rep.restriction_isomorphism_ok;
    j["restriction_isomorphism"] = matrix_to_json(rep.restriction_isomorphism);
    j["factor_a_retract"] = rep.factor_a_retract;
    j["factor_b_retract"] = rep.factor_b_retract;
    j["composite_retract"] = rep.composite_retract;
    j["converse_holds"] = rep.converse_holds;
  } else {
    throw input_error("tensor-check: unknown mode " + mode);
  }
  emit(c, j.dump(2));
  return (any_unknown && c.strict) ? 2 : 0;
}

int run_verify_seq(const std::string& seq_file, const CommonOpts& c) {
  ExactSequence seq = sequence_from_json(load_json_file(seq_file), c.bound_subgroups);
  SequenceDiagnostics d = verify_exactness(seq);
  Json j;
  j["exact"] = d.ok;
  if (!d.ok) j["failure"] = d.failure;
  emit(c, j.dump(2));
  return d.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with integral representations of finite groups"};
  app.require_subcommand(1);

  CommonOpts c;

  std::string group_file, lattice_file, subgroup_file, seq_file, a_file, b_file, mode;
  std::vector<std::string> spec_files;

  auto* info = app.add_subcommand("group-info", "group order, subgroup classes, sylow data");
  info->add_option("--group", group_file, "group spec file")->required();
  add_common(info, c);

  auto* coh = app.add_subcommand("lattice-cohomology", "fixed points, H^1, H^2, Tate");
  coh->add_option("--group", group_file, "group spec file")->required();
  coh->add_option("--lattice", lattice_file, "lattice spec file")->required();
  coh->add_option("--subgroup", subgroup_file, "subgroup file (defaults to the full group)");
  add_common(coh, c);

  auto* pord = app.add_subcommand("pord", "permutation order with certificates");
  pord->add_option("--group", group_file, "group spec file")->required();
  pord->add_option("--lattice", lattice_file, "lattice spec file")->required();
  add_common(pord, c);

  auto* classify = app.add_subcommand("classify", "stable/retract rationality of a norm-one torus");
  classify->add_option("--spec", spec_files, "etale spec file (repeatable for batches)");
  classify->add_option("--group", group_file, "group file (shorthand for a one-factor spec)");
  classify->add_option("--subgroup", subgroup_file, "subgroup file for the shorthand form");
  add_common(classify, c);

  auto* hasse = app.add_subcommand("hasse", "norm-principle obstruction group");
  hasse->add_option("--spec", spec_files, "etale spec file")->required();
  add_common(hasse, c);

  auto* tensor = app.add_subcommand("tensor-check", "product splitting / tensor rationality / converse");
  tensor->add_option("--mode", mode, "split, rationality, or converse")->required();
  tensor->add_option("--spec-a", a_file, "first etale spec")->required();
  tensor->add_option("--spec-b", b_file, "second etale spec")->required();
  add_common(tensor, c);

  auto* verify = app.add_subcommand("verify-seq", "exactness of a sequence of lattices");
  verify->add_option("--sequence", seq_file, "sequence spec file")->required();
  add_common(verify, c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (info->parsed()) return run_group_info(group_file, c);
    if (coh->parsed()) return run_lattice_cohomology(group_file, lattice_file, subgroup_file, c);
    if (pord->parsed()) return run_pord(group_file, lattice_file, c);
    if (classify->parsed()) return run_classify(spec_files, group_file, subgroup_file, c, false);
    if (hasse->parsed()) return run_classify(spec_files, "", "", c, true);
    if (tensor->parsed()) return run_tensor_check(mode, a_file, b_file, c);
    if (verify->parsed()) return run_verify_seq(seq_file, c);
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const resource_error& e) {
    std::cerr << "resource bound exceeded: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
