#pragma once

#include <optional>
#include <string>

#include "netcontract/lognorm.hpp"
#include "netcontract/matrix_core.hpp"
#include "netcontract/networks.hpp"
#include "netcontract/simulate.hpp"

namespace netcontract {

inline constexpr const char* kSchemaVersion = "1";

// Parsed model file. Exactly one of matrix, polytope and network is set,
// according to `tag`.
//
//   {"schema_version": "1", "model": "hopfield", "C": [[1,0],[0,1]],
//    "A": [[0,1],[1,0]], "u": [0,0], "slopes": {"d1": 0, "d2": "inf"},
//    "activation": {"kind": "tanh"}}
//
// Tags: matrix (A), polytope (A, c, slopes, side), hopfield and firing_rate
// (C, A, u, slopes), persidskii (A, slopes), ax_minus_cphi (A, C, slopes),
// entrywise (A, slopes), lure (A, v, w, slopes), multilure (A, B, Cout,
// slopes). "u" defaults to zero; C may be given as its diagonal. Unknown
// fields and tags are rejected.
struct ModelFile {
  std::string tag;
  std::optional<Matrix> matrix;
  std::optional<PolytopeSpec> polytope;
  std::optional<NetworkModel> network;
  std::optional<Activation> activation;
};

// Throws ValidationError on malformed JSON or invalid contents.
ModelFile parse_model_file(const std::string& text);
ModelFile load_model_file(const std::string& path);

// Canonical form: sorted keys, 17 significant digits, "inf" for d2 = inf.
std::string model_to_json(const ModelFile& file, int indent = -1);

bool same_model(const ModelFile& a, const ModelFile& b);

}  // namespace netcontract
