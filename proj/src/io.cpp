#include "glat/io.hpp"

#include <fstream>
#include <sstream>

namespace glat {

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  try {
    return Json::parse(in, nullptr, true, true);  // allow comments
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

Perm perm_from_json(const Json& j, int degree) {
  if (!j.is_array()) throw input_error("permutation must be an array of images");
  std::vector<int> im;
  for (const auto& v : j) im.push_back(v.get<int>() - 1);  // 1-indexed on the wire
  if (static_cast<int>(im.size()) != degree) throw input_error("permutation degree mismatch");
  return Perm(std::move(im));
}

Json perm_to_json(const Perm& p) {
  Json j = Json::array();
  for (int x : p.images()) j.push_back(x + 1);
  return j;
}

FiniteGroup::Ptr group_from_json(const Json& j, int bound) {
  if (!j.contains("degree") || !j.contains("generators")) throw input_error("group spec needs degree and generators");
  int degree = j.at("degree").get<int>();
  if (degree <= 0) throw input_error("group degree must be positive");
  std::vector<Perm> gens;
  for (const auto& g : j.at("generators")) gens.push_back(perm_from_json(g, degree));
  std::string id = j.value("id", "G");
  return FiniteGroup::generate(degree, gens, id, bound);
}

Json group_to_json(const FiniteGroup::Ptr& g) {
  Json j;
  j["degree"] = g->degree();
  Json gens = Json::array();
  for (int gi : g->generator_indices()) gens.push_back(perm_to_json(g->element(gi)));
  j["generators"] = gens;
  j["id"] = g->id();
  return j;
}

IMat matrix_from_json(const Json& j) {
  if (!j.is_array()) throw input_error("matrix must be an array of rows");
  const Index rows = static_cast<Index>(j.size());
  Index cols = rows > 0 ? static_cast<Index>(j.at(0).size()) : 0;
  IMat m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<size_t>(r));
    if (static_cast<Index>(row.size()) != cols) throw input_error("ragged matrix rows");
    for (Index c = 0; c < cols; ++c) m(r, c) = row.at(static_cast<size_t>(c)).get<Int>();
  }
  return m;
}

Json matrix_to_json(const IMat& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

GLattice lattice_from_json(const Json& j, const FiniteGroup::Ptr& g) {
  if (j.contains("group") && j.at("group").is_string() && j.at("group").get<std::string>() != g->id())
    throw input_error("lattice spec references group '" + j.at("group").get<std::string>() + "', got '" + g->id() + "'");
  Index rank = j.at("rank").get<Index>();
  bool row_convention = j.value("convention", "col") == std::string("row");
  std::vector<IMat> gens(g->generator_indices().size());
  const auto& action = j.at("action");
  if (action.size() != gens.size()) throw input_error("lattice action must cover every generator");
  for (size_t k = 0; k < gens.size(); ++k) {
    IMat m = matrix_from_json(action.at(std::to_string(k)));
    if (m.rows() != rank || m.cols() != rank) throw input_error("action matrix shape mismatch");
    gens[k] = row_convention ? IMat(m.transpose()) : m;
  }
  return GLattice(g, std::move(gens), rank, /*validate=*/true);
}

Json lattice_to_json(const GLattice& m) {
  Json j;
  j["group"] = m.group()->id();
  j["rank"] = m.rank();
  Json action;
  for (size_t k = 0; k < m.gen_matrices().size(); ++k) action[std::to_string(k)] = matrix_to_json(m.gen_matrices()[k]);
  j["action"] = std::move(action);
  return j;
}

Subgroup subgroup_from_json(const Json& j, const FiniteGroup::Ptr& g) {
  std::vector<int> elements;
  for (const auto& e : j) {
    if (e.is_number_integer()) {
      elements.push_back(e.get<int>());
    } else {
      elements.push_back(g->index_of(perm_from_json(e, g->degree())));
    }
  }
  return subgroup_from_elements(g, std::move(elements));
}

EtaleSpec etale_spec_from_json(const Json& j, int bound) {
  EtaleSpec spec;
  std::vector<FiniteGroup::Ptr> groups;
  for (const auto& f : j.at("factors")) {
    EtaleFactor factor;
    factor.group = group_from_json(f.at("group"), bound);
    factor.subgroup = subgroup_from_json(f.at("subgroup"), factor.group);
    factor.multiplicity = f.value("multiplicity", 1);
    groups.push_back(factor.group);
    spec.factors.push_back(std::move(factor));
  }
  if (spec.factors.empty()) throw input_error("etale spec: no factors");
  if (!j.contains("joint")) {
    EtaleSpec built = make_etale_spec(spec.factors);
    return built;
  }
  const auto& joint = j.at("joint");
  spec.joint.group = group_from_json(joint.at("group"), bound);
  const auto& projections = joint.at("projections");
  if (projections.size() != spec.factors.size())
    throw input_error("etale spec: one projection per factor required");
  for (size_t f = 0; f < spec.factors.size(); ++f) {
    const auto& pj = projections.at(f);
    const auto& gens = spec.joint.group->generator_indices();
    if (pj.size() != gens.size()) throw input_error("etale spec: projection must list one image per joint generator");
    // images of the joint generators determine the homomorphism
    const auto& target = spec.factors[f].group;
    std::vector<int> gen_images;
    for (const auto& img : pj) gen_images.push_back(target->index_of(perm_from_json(img, target->degree())));
    // extend along the word structure
    std::vector<int> full(spec.joint.group->order(), -1);
    full[0] = 0;
    bool progress = true;
    while (progress) {
      progress = false;
      for (int e = 1; e < spec.joint.group->order(); ++e) {
        if (full[e] >= 0 || full[spec.joint.group->parent_of(e)] < 0) continue;
        full[e] = target->mul(gen_images[spec.joint.group->gen_of(e)], full[spec.joint.group->parent_of(e)]);
        progress = true;
      }
    }
    // homomorphism check
    for (int a = 0; a < spec.joint.group->order(); ++a)
      for (int gi : spec.joint.group->generator_indices())
        if (full[spec.joint.group->mul(gi, a)] != target->mul(full[gi], full[a]))
          throw input_error("etale spec: projection is not a homomorphism");
    spec.joint.factors.push_back(target);
    spec.joint.proj.push_back(std::move(full));
  }
  spec.joint.validate_surjective();
  return spec;
}

Json etale_spec_to_json(const EtaleSpec& spec) {
  Json j;
  Json factors = Json::array();
  for (const auto& f : spec.factors) {
    Json fj;
    fj["group"] = group_to_json(f.group);
    Json sub = Json::array();
    for (int e : f.subgroup.elements) sub.push_back(perm_to_json(f.group->element(e)));
    fj["subgroup"] = sub;
    fj["multiplicity"] = f.multiplicity;
    factors.push_back(std::move(fj));
  }
  j["factors"] = std::move(factors);
  Json joint;
  joint["group"] = group_to_json(spec.joint.group);
  Json projections = Json::array();
  for (size_t f = 0; f < spec.joint.proj.size(); ++f) {
    Json pj = Json::array();
    for (int gi : spec.joint.group->generator_indices())
      pj.push_back(perm_to_json(spec.joint.factors[f]->element(spec.joint.proj[f][gi])));
    projections.push_back(std::move(pj));
  }
  joint["projections"] = std::move(projections);
  j["joint"] = std::move(joint);
  return j;
}

ExactSequence sequence_from_json(const Json& j, int bound) {
  FiniteGroup::Ptr g = group_from_json(j.at("group"), bound);
  ExactSequence seq;
  for (const auto& t : j.at("terms")) seq.terms.push_back(lattice_from_json(t, g));
  const auto& maps = j.at("maps");
  if (maps.size() + 1 != seq.terms.size()) throw input_error("sequence: need one map between consecutive terms");
  for (size_t i = 0; i < maps.size(); ++i)
    seq.maps.push_back(LatticeMap(seq.terms[i], seq.terms[i + 1], matrix_from_json(maps.at(i))));
  return seq;
}

Json sequence_to_json(const ExactSequence& seq) {
  Json j;
  j["group"] = group_to_json(seq.terms.at(0).group());
  Json terms = Json::array();
  for (const auto& t : seq.terms) terms.push_back(lattice_to_json(t));
  j["terms"] = std::move(terms);
  Json maps = Json::array();
  for (const auto& m : seq.maps) maps.push_back(matrix_to_json(m.matrix));
  j["maps"] = std::move(maps);
  return j;
}

ExtensionClass extension_from_json(const Json& j, int bound) {
  FiniteGroup::Ptr g = group_from_json(j.at("group"), bound);
  GLattice sub = lattice_from_json(j.at("sub"), g);
  GLattice quot = lattice_from_json(j.at("quotient"), g);
  const auto& coc = j.at("cocycle");
  std::vector<IMat> gen_values;
  for (size_t k = 0; k < g->generator_indices().size(); ++k)
    gen_values.push_back(matrix_from_json(coc.at(std::to_string(k))));
  auto full = cocycle_from_generator_values(sub, quot, gen_values);
  return extension_from_cocycle(sub, quot, full);
}

Json extension_to_json(const ExtensionClass& ext) {
  Json j;
  j["group"] = group_to_json(ext.sub.group());
  j["sub"] = lattice_to_json(ext.sub);
  j["quotient"] = lattice_to_json(ext.quotient);
  Json coc;
  const auto& gens = ext.sub.group()->generator_indices();
  for (size_t k = 0; k < gens.size(); ++k) coc[std::to_string(k)] = matrix_to_json(ext.cocycle[gens[k]]);
  j["cocycle"] = std::move(coc);
  return j;
}

Json abelian_to_json(const AbelianGroup& a) {
  Json j;
  j["torsion"] = a.torsion;
  j["free_rank"] = a.free_rank;
  return j;
}

AbelianGroup abelian_from_json(const Json& j) {
  AbelianGroup a;
  for (const auto& d : j.at("torsion")) a.torsion.push_back(d.get<Int>());
  a.free_rank = j.at("free_rank").get<Index>();
  return a;
}

Json resolution_to_json(const Resolution& r) {
  Json j;
  j["kind"] = r.kind == Resolution::Kind::coflabby ? "coflabby" : "flabby";
  j["order"] = r.order;
  j["terms"] = Json::array();
  for (const auto& t : r.seq.terms) j["terms"].push_back(Json{{"rank", t.rank()}});
  Json maps = Json::array();
  for (const auto& m : r.seq.maps) maps.push_back(matrix_to_json(m.matrix));
  j["maps"] = std::move(maps);
  j["order_section"] = matrix_to_json(r.order_section);
  j["order_retraction"] = matrix_to_json(r.order_retraction);
  Json ev = Json::array();
  for (const auto& e : r.evidence) {
    Json ej;
    ej["subgroup"] = e.subgroup;
    if (e.solution.size() > 0) ej["surjectivity_witness"] = matrix_to_json(e.solution);
    if (r.kind == Resolution::Kind::flabby) ej["tate_h_minus1"] = abelian_to_json(e.tate);
    ev.push_back(std::move(ej));
  }
  j["evidence"] = std::move(ev);
  return j;
}

Json witness_to_json(const StablyPermutationVerdict& v) {
  Json j;
  switch (v.kind) {
    case StablyPermutationVerdict::Kind::witness:
      j["verdict"] = "witness";
      break;
    case StablyPermutationVerdict::Kind::disproof:
      j["verdict"] = "disproof";
      break;
    default:
      j["verdict"] = "unknown";
  }
  if (!v.coefficients.empty()) j["coefficients"] = v.coefficients;
  if (v.kind == StablyPermutationVerdict::Kind::witness) j["intertwiner"] = matrix_to_json(v.intertwiner);
  j["rank_system"] = matrix_to_json(v.system);
  j["rank_values"] = matrix_to_json(v.rhs);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json classification_to_json(const ClassificationReport& rep) {
  Json j;
  j["lattice"] = lattice_to_json(rep.lattice);
  j["orbit_sizes"] = rep.orbit_sizes;
  j["pord"] = rep.verdicts.pord;
  j["retract_rational"] = rep.verdicts.retract_rational;
  j["stably_rational"] = to_string(rep.verdicts.stably_rational);
  j["stable_witness"] = witness_to_json(rep.verdicts.stable_witness);
  j["sha2_omega"] = abelian_to_json(rep.verdicts.sha2_omega);
  j["sha2_omega_two_routes"] = rep.verdicts.sha_two_routes;
  j["flabby_resolution"] = resolution_to_json(rep.verdicts.flabby);
  if (rep.reduction) {
    Json red;
    red["permutation_witness"] = matrix_to_json(rep.reduction->matrix);
    j["fixed_point_reduction"] = std::move(red);
  }
  Json checks = Json::array();
  for (const auto& c : rep.cross_checks) {
    Json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["detail"] = c.detail;
    checks.push_back(std::move(cj));
  }
  j["cross_checks"] = std::move(checks);
  return j;
}

std::string classification_to_markdown(const ClassificationReport& rep) {
  std::ostringstream os;
  os << "| dim | orbit sizes | p-ord | retract rational | stably rational | obstruction |\n";
  os << "|---|---|---|---|---|---|\n";
  os << "| " << rep.lattice.rank() << " | ";
  for (size_t i = 0; i < rep.orbit_sizes.size(); ++i) os << (i ? "+" : "") << rep.orbit_sizes[i];
  os << " | " << rep.verdicts.pord << " | " << (rep.verdicts.retract_rational ? "yes" : "no") << " | "
     << to_string(rep.verdicts.stably_rational) << " | " << rep.verdicts.sha2_omega.to_string() << " |\n\n";
  os << "cross checks:\n";
  for (const auto& c : rep.cross_checks)
    os << "- " << c.name << ": " << (c.pass ? "pass" : "FAIL") << " (" << c.detail << ")\n";
  return os.str();
}

}  // namespace glat
