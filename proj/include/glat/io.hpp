#pragma once

#include <string>

#include "json.hpp"

#include "glat/rationality.hpp"

// JSON ingestion and serialisation. All matrices are nested arrays, row
// major. Permutations are 1-indexed image arrays. Lattice actions may be
// given in the row convention ("convention": "row"); they are transposed on
// load so the internal column convention is uniform.

namespace glat {

using Json = nlohmann::ordered_json;

Json load_json_file(const std::string& path);

Perm perm_from_json(const Json& j, int degree);
Json perm_to_json(const Perm& p);

FiniteGroup::Ptr group_from_json(const Json& j, int bound = kDefaultGroupBound);
Json group_to_json(const FiniteGroup::Ptr& g);

GLattice lattice_from_json(const Json& j, const FiniteGroup::Ptr& g);
Json lattice_to_json(const GLattice& m);

Subgroup subgroup_from_json(const Json& j, const FiniteGroup::Ptr& g);

EtaleSpec etale_spec_from_json(const Json& j, int bound = kDefaultGroupBound);
Json etale_spec_to_json(const EtaleSpec& spec);

ExactSequence sequence_from_json(const Json& j, int bound = kDefaultGroupBound);
Json sequence_to_json(const ExactSequence& seq);

ExtensionClass extension_from_json(const Json& j, int bound = kDefaultGroupBound);
Json extension_to_json(const ExtensionClass& ext);

Json matrix_to_json(const IMat& m);
IMat matrix_from_json(const Json& j);

Json abelian_to_json(const AbelianGroup& a);
AbelianGroup abelian_from_json(const Json& j);

Json classification_to_json(const ClassificationReport& rep);
std::string classification_to_markdown(const ClassificationReport& rep);

Json resolution_to_json(const Resolution& r);
Json witness_to_json(const StablyPermutationVerdict& v);

}  // namespace glat
