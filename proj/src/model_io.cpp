#include "netcontract/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "json_writer.hpp"
#include "netcontract/errors.hpp"

namespace netcontract {
namespace {

using nlohmann::json;

const json& field(const json& j, const char* name) {
  if (!j.contains(name)) throw ValidationError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ValidationError(what + " must be a number");
  return j.get<double>();
}

Vector read_vector(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ValidationError(what + " must be a nonempty array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], what);
  return v;
}

Matrix read_matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ValidationError(what + " must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw ValidationError(what + " rows must be nonempty arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError(what + " is not rectangular");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = number(row[static_cast<std::size_t>(c)], what);
  }
  return m;
}

// C may be written as a matrix or as its diagonal.
Matrix read_decay(const json& j) {
  if (j.is_array() && !j.empty() && j[0].is_number()) return read_vector(j, "C").asDiagonal();
  return read_matrix(j, "C");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ValidationError("unknown field \"" + it.key() + "\" in " + where);
  }
}

SlopeInterval read_slopes(const json& j) {
  if (!j.is_object()) throw ValidationError("slopes must be an object");
  reject_unknown(j, {"d1", "d2"}, "slopes");
  const double d1 = number(field(j, "d1"), "d1");
  const json& upper = field(j, "d2");
  double d2 = 0.0;
  if (upper.is_string()) {
    if (upper.get<std::string>() != "inf") throw ValidationError("d2 must be a number or \"inf\"");
    d2 = kInf;
  } else {
    d2 = number(upper, "d2");
  }
  return SlopeInterval(d1, d2);
}

Activation read_activation(const json& j) {
  if (!j.is_object()) throw ValidationError("activation must be an object");
  const json& kind_field = field(j, "kind");
  if (!kind_field.is_string()) throw ValidationError("activation kind must be a string");
  const std::string kind = kind_field.get<std::string>();
  if (kind == "relu" || kind == "tanh" || kind == "sigmoid") {
    reject_unknown(j, {"kind"}, "activation");
    if (kind == "relu") return Activation::relu();
    if (kind == "tanh") return Activation::tanh();
    return Activation::sigmoid();
  }
  if (kind == "leaky_relu") {
    reject_unknown(j, {"kind", "a"}, "activation");
    return Activation::leaky_relu(number(field(j, "a"), "a"));
  }
  if (kind == "rect_poly") {
    reject_unknown(j, {"kind", "r"}, "activation");
    const json& r = field(j, "r");
    if (!r.is_number_integer()) throw ValidationError("rect_poly exponent r must be an integer");
    return Activation::rect_poly(r.get<int>());
  }
  if (kind == "linear") {
    reject_unknown(j, {"kind", "k"}, "activation");
    return Activation::linear(number(field(j, "k"), "k"));
  }
  throw ValidationError("unknown activation kind \"" + kind + "\"");
}

ScalingSide read_side(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "left") return ScalingSide::Left;
    if (j.get<std::string>() == "right") return ScalingSide::Right;
  }
  throw ValidationError("side must be \"left\" or \"right\"");
}

Vector optional_input(const json& j, Eigen::Index n) {
  return j.contains("u") ? read_vector(j.at("u"), "u") : Vector::Zero(n);
}

json write_matrix(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json write_vector(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json write_slopes(const SlopeInterval& s) {
  json out = {{"d1", s.d1}};
  if (s.bounded()) out["d2"] = s.d2;
  else out["d2"] = "inf";
  return out;
}

json write_activation(const Activation& a) {
  json out = {{"kind", to_string(a.kind())}};
  switch (a.kind()) {
    case ActivationKind::LeakyRelu: out["a"] = a.parameter(); break;
    case ActivationKind::RectPoly: out["r"] = static_cast<int>(a.parameter()); break;
    case ActivationKind::Linear: out["k"] = a.parameter(); break;
    default: break;
  }
  return out;
}

json write_network(const NetworkModel& model) {
  struct Visitor {
    json operator()(const Hopfield& m) const {
      return {{"C", write_matrix(m.c())}, {"A", write_matrix(m.a())}, {"u", write_vector(m.u())}};
    }
    json operator()(const FiringRate& m) const {
      return {{"C", write_matrix(m.c())}, {"A", write_matrix(m.a())}, {"u", write_vector(m.u())}};
    }
    json operator()(const Persidskii& m) const { return {{"A", write_matrix(m.a())}}; }
    json operator()(const AxMinusCPhi& m) const {
      return {{"A", write_matrix(m.a())}, {"C", write_matrix(m.c())}};
    }
    json operator()(const Entrywise& m) const { return {{"A", write_matrix(m.a())}}; }
    json operator()(const Lure& m) const {
      return {{"A", write_matrix(m.a())}, {"v", write_vector(m.v())}, {"w", write_vector(m.w())}};
    }
    json operator()(const MultiLure& m) const {
      return {{"A", write_matrix(m.a())}, {"B", write_matrix(m.b())}, {"Cout", write_matrix(m.cout())}};
    }
  };
  json out = std::visit(Visitor{}, model);
  out["slopes"] = write_slopes(model_slopes(model));
  return out;
}

bool same_activation(const std::optional<Activation>& a, const std::optional<Activation>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->kind() == b->kind() && a->parameter() == b->parameter());
}

bool same_network(const NetworkModel& a, const NetworkModel& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&b](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b);
        if (!(x.a() == y.a()) || !(x.slopes() == y.slopes())) return false;
        if constexpr (std::is_same_v<T, Hopfield> || std::is_same_v<T, FiringRate>) {
          return x.c() == y.c() && x.u() == y.u();
        } else if constexpr (std::is_same_v<T, AxMinusCPhi>) {
          return x.c() == y.c();
        } else if constexpr (std::is_same_v<T, Lure>) {
          return x.v() == y.v() && x.w() == y.w();
        } else if constexpr (std::is_same_v<T, MultiLure>) {
          return x.b() == y.b() && x.cout() == y.cout();
        } else {
          return true;
        }
      },
      a);
}

}  // namespace

ModelFile parse_model_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("model file must be a JSON object");
  const json& version = field(j, "schema_version");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
    throw ValidationError("unsupported schema_version (expected \"1\")");
  }
  const json& tag_field = field(j, "model");
  if (!tag_field.is_string()) throw ValidationError("model tag must be a string");

  ModelFile out;
  out.tag = tag_field.get<std::string>();
  const std::set<std::string> common = {"schema_version", "model"};
  auto allow = [&](std::initializer_list<const char*> names, bool activation) {
    std::set<std::string> allowed = common;
    for (const char* n : names) allowed.insert(n);
    if (activation) allowed.insert("activation");
    reject_unknown(j, allowed, "model file");
  };

  const std::string& tag = out.tag;
  if (tag == "matrix") {
    allow({"A"}, false);
    Matrix a = read_matrix(field(j, "A"), "A");
    require_square(a, "A");
    out.matrix = std::move(a);
    return out;
  }
  if (tag == "polytope") {
    allow({"A", "c", "slopes", "side"}, false);
    out.polytope.emplace(read_matrix(field(j, "A"), "A"), read_vector(field(j, "c"), "c"),
                         read_slopes(field(j, "slopes")), read_side(field(j, "side")));
    return out;
  }
  if (tag == "hopfield" || tag == "firing_rate") {
    allow({"C", "A", "u", "slopes"}, true);
    Matrix a = read_matrix(field(j, "A"), "A");
    Matrix c = read_decay(field(j, "C"));
    Vector u = optional_input(j, a.rows());
    const SlopeInterval s = read_slopes(field(j, "slopes"));
    if (tag == "hopfield") out.network = Hopfield(std::move(c), std::move(a), std::move(u), s);
    else out.network = FiringRate(std::move(c), std::move(a), std::move(u), s);
  } else if (tag == "persidskii") {
    allow({"A", "slopes"}, true);
    out.network = Persidskii(read_matrix(field(j, "A"), "A"), read_slopes(field(j, "slopes")));
  } else if (tag == "ax_minus_cphi") {
    allow({"A", "C", "slopes"}, true);
    out.network = AxMinusCPhi(read_matrix(field(j, "A"), "A"), read_decay(field(j, "C")),
                              read_slopes(field(j, "slopes")));
  } else if (tag == "entrywise") {
    allow({"A", "slopes"}, true);
    out.network = Entrywise(read_matrix(field(j, "A"), "A"), read_slopes(field(j, "slopes")));
  } else if (tag == "lure") {
    allow({"A", "v", "w", "slopes"}, true);
    out.network = Lure(read_matrix(field(j, "A"), "A"), read_vector(field(j, "v"), "v"),
                       read_vector(field(j, "w"), "w"), read_slopes(field(j, "slopes")));
  } else if (tag == "multilure") {
    allow({"A", "B", "Cout", "slopes"}, true);
    out.network = MultiLure(read_matrix(field(j, "A"), "A"), read_matrix(field(j, "B"), "B"),
                            read_matrix(field(j, "Cout"), "Cout"), read_slopes(field(j, "slopes")));
  } else {
    throw ValidationError("unknown model tag \"" + tag + "\"");
  }
  if (j.contains("activation")) out.activation = read_activation(j.at("activation"));
  return out;
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_file(buf.str());
}

std::string model_to_json(const ModelFile& file, int indent) {
  json out;
  if (file.matrix) {
    out["A"] = write_matrix(*file.matrix);
  } else if (file.polytope) {
    out["A"] = write_matrix(file.polytope->a);
    out["c"] = write_vector(file.polytope->c);
    out["slopes"] = write_slopes(file.polytope->slopes);
    out["side"] = to_string(file.polytope->side);
  } else if (file.network) {
    out = write_network(*file.network);
  } else {
    throw ValidationError("empty model file");
  }
  if (file.activation) out["activation"] = write_activation(*file.activation);
  out["schema_version"] = kSchemaVersion;
  out["model"] = file.tag;
  return canonical_dump(out, indent);
}

bool same_model(const ModelFile& a, const ModelFile& b) {
  if (a.tag != b.tag || !same_activation(a.activation, b.activation)) return false;
  if (a.matrix.has_value() != b.matrix.has_value() || a.polytope.has_value() != b.polytope.has_value() ||
      a.network.has_value() != b.network.has_value()) {
    return false;
  }
  if (a.matrix && !(*a.matrix == *b.matrix)) return false;
  if (a.polytope) {
    const PolytopeSpec& x = *a.polytope;
    const PolytopeSpec& y = *b.polytope;
    if (!(x.a == y.a) || !(x.c == y.c) || !(x.slopes == y.slopes) || x.side != y.side) return false;
  }
  return !a.network || same_network(*a.network, *b.network);
}

}  // namespace netcontract
