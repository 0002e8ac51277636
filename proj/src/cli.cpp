#include "netcontract/cli.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "json_writer.hpp"
#include "netcontract/classify.hpp"
#include "netcontract/errors.hpp"
#include "netcontract/lognorm.hpp"
#include "netcontract/model_io.hpp"
#include "netcontract/networks.hpp"
#include "netcontract/simulate.hpp"

namespace netcontract {
namespace {

using nlohmann::json;

NormFamily parse_family(const std::string& s) {
  if (s == "l1") return NormFamily::L1;
  if (s == "linf") return NormFamily::Linf;
  if (s == "l2") return NormFamily::L2;
  throw ValidationError("unknown norm family \"" + s + "\"");
}

std::vector<double> parse_csv(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ValidationError("bad number \"" + item + "\" in weight list");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw ValidationError("bad number \"" + item + "\" in weight list");
    out.push_back(value);
  }
  return out;
}

// "1,2,3" or a path to a file holding a JSON array or a comma list.
WeightVector parse_eta(const std::string& spec) {
  std::string text = spec;
  if (spec.find_first_not_of("0123456789.,eE+- \t") != std::string::npos) {
    std::ifstream in(spec);
    if (!in) throw ValidationError("cannot open weight file " + spec);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
      try {
        const auto values = json::parse(text).get<std::vector<double>>();
        return WeightVector(Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size())));
      } catch (const json::exception& e) {
        throw ValidationError(std::string("bad weight file: ") + e.what());
      }
    }
    for (char& ch : text) {
      if (ch == '\n' || ch == '\r') ch = ',';
    }
    while (!text.empty() && text.back() == ',') text.pop_back();
  }
  const std::vector<double> values = parse_csv(text);
  if (values.empty()) throw ValidationError("empty weight list");
  return WeightVector(Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size())));
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json to_json(const ContractionCertificate& c) {
  json out = {
      {"contracting", c.contracting},
      {"rate", c.rate},
      {"family", to_string(c.family)},
      {"eta", to_json(c.eta.values())},
      {"theorem_tag", c.theorem_tag},
      {"tight", c.tight},
      {"margin", c.margin},
      {"osl", c.osl},
      {"mh_shortcut", c.mh_shortcut},
  };
  if (c.linf_eta) out["linf_eta"] = to_json(c.linf_eta->values());
  if (c.b_star) out["b_star"] = *c.b_star;
  if (c.closed_form) out["closed_form"] = *c.closed_form;
  if (c.statement_rate) out["statement_rate"] = *c.statement_rate;
  if (!c.violated_condition.empty()) out["violated_condition"] = c.violated_condition;
  return out;
}

json to_json(const SimReport& r) {
  return {
      {"passed", r.passed},
      {"worst_decay_ratio", r.worst_decay_ratio},
      {"max_sampled_mu", r.max_sampled_mu},
      {"pairs", r.pairs},
      {"horizon", r.horizon},
      {"step", r.step},
      {"seed", r.seed},
      {"kink_perturbations", r.kink_perturbations},
  };
}

json to_json(const ClassReport& r) {
  json out = {
      {"hurwitz", r.hurwitz},
      {"totally_hurwitz", r.totally_hurwitz},
      {"m_hurwitz", r.m_hurwitz},
      {"quasidominant", r.quasidominant},
      {"lds_certified", r.lds_certified_at.has_value()},
      {"abscissa", r.abscissa},
      {"majorant_abscissa", r.majorant_abscissa},
      {"hurwitz_marginal", r.hurwitz_marginal},
      {"m_hurwitz_marginal", r.m_hurwitz_marginal},
  };
  if (r.lds_certified_at) out["lds_weight"] = to_json(r.lds_certified_at->values());
  return out;
}

const Matrix& require_matrix(const ModelFile& file) {
  if (!file.matrix) throw ValidationError("this command expects a \"matrix\" model file");
  return *file.matrix;
}

const NetworkModel& require_network(const ModelFile& file) {
  if (!file.network) throw ValidationError("this command expects a network model file");
  return *file.network;
}

std::pair<Eigen::Index, Eigen::Index> parse_edge(const std::string& s) {
  const std::vector<double> v = parse_csv(s);
  if (v.size() != 2 || v[0] < 1 || v[1] < 1 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) {
    throw ValidationError("--remove-edge expects two 1-based indices \"i,j\"");
  }
  return {static_cast<Eigen::Index>(v[0]) - 1, static_cast<Eigen::Index>(v[1]) - 1};
}

struct Options {
  std::string file;
  std::string family;
  std::string eta;
  std::string route = "auto";
  int indent = -1;
  int pairs = 20;
  double horizon = kDefaultHorizon;
  double step = kDefaultStep;
  std::uint64_t seed = 0;
  std::vector<std::string> edges;
  double shift = 0.0;
};

json cmd_lognorm(const Options& o) {
  const ModelFile file = load_model_file(o.file);
  const Matrix& a = require_matrix(file);
  const NormFamily family = parse_family(o.family.empty() ? "l1" : o.family);
  const WeightVector eta = o.eta.empty() ? WeightVector::ones(a.rows()) : parse_eta(o.eta);
  return {{"value", lognorm(a, family, eta)}};
}

json cmd_classify(const Options& o) {
  const ModelFile file = load_model_file(o.file);
  const Matrix& a = require_matrix(file);
  std::optional<WeightVector> weight;
  if (!o.eta.empty()) weight = parse_eta(o.eta);
  else if (is_m_hurwitz(a)) weight = lds_witness_weight(a);
  return to_json(classify(a, weight));
}

json cmd_certify(const Options& o) {
  const ModelFile file = load_model_file(o.file);
  const NetworkModel& model = require_network(file);
  std::optional<NormFamily> family;
  if (!o.family.empty()) family = parse_family(o.family);
  if (!o.eta.empty()) {
    const NormFamily f = family.value_or(std::holds_alternative<FiringRate>(model) ? NormFamily::Linf : NormFamily::L1);
    const WeightVector eta = parse_eta(o.eta);
    const FixedWeightOsl osl = fixed_weight_osl(model, f, eta);
    return to_json(make_certificate(osl.value, f, eta, std::string(model_tag(model)) + "_fixed_weight", osl.tight));
  }
  return to_json(certify(model, family));
}

json cmd_prune(const Options& o) {
  const ModelFile file = load_model_file(o.file);
  const Matrix& a = require_matrix(file);
  json subsets = json::array();
  for (const SubsetEntry& e : pruning_robustness(a)) {
    json idx = json::array();
    for (Eigen::Index i : e.indices.indices()) idx.push_back(i + 1);
    subsets.push_back({{"indices", idx}, {"m_hurwitz", e.m_hurwitz}, {"majorant_abscissa", e.majorant_abscissa}});
  }
  json out = {{"subsets", subsets}};
  if (!o.edges.empty()) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> zeroed;
    for (const std::string& s : o.edges) zeroed.push_back(parse_edge(s));
    const EdgeRemovalResult r = edge_removal_check(a, zeroed, o.shift);
    out["edge_removal"] = {{"before_hurwitz", r.before_hurwitz},
                           {"after_hurwitz", r.after_hurwitz},
                           {"before_abscissa", r.before_abscissa},
                           {"after_abscissa", r.after_abscissa},
                           {"shift", o.shift}};
  }
  return out;
}

json cmd_worst_case(const Options& o) {
  const ModelFile file = load_model_file(o.file);
  if (!file.polytope) throw ValidationError("worst-case expects a \"polytope\" model file");
  const PolytopeSpec& spec = *file.polytope;
  const NormFamily family = parse_family(o.family.empty() ? "l1" : o.family);
  const WeightVector eta = o.eta.empty() ? WeightVector::ones(spec.dim()) : parse_eta(o.eta);
  if (o.route != "auto" && o.route != "general") throw ValidationError("--route must be auto or general");
  const WorstCaseRoute route = o.route == "general" ? WorstCaseRoute::General : WorstCaseRoute::Auto;
  return {{"value", worst_case_mu(spec, family, eta, route)}};
}

json cmd_multilure_osl(const Options& o) {
  const ModelFile file = load_model_file(o.file);
  const NetworkModel& model = require_network(file);
  const auto* m = std::get_if<MultiLure>(&model);
  if (m == nullptr) throw ValidationError("multilure-osl expects a \"multilure\" model file");
  const NormFamily family = parse_family(o.family.empty() ? "linf" : o.family);
  const WeightVector eta = o.eta.empty() ? WeightVector::ones(m->dim()) : parse_eta(o.eta);
  const FixedWeightOsl r = fixed_weight_osl(model, family, eta);
  return {{"value", r.value}, {"tight", r.tight}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contraction certificates for recurrent network models"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("file", o.file, "JSON model file")->required();
    sub->add_option("--json-indent", o.indent, "Indent JSON output by this many spaces");
  };
  auto add_family = [&o](CLI::App* sub, const char* choices) {
    sub->add_option("--family", o.family, std::string("Norm family (") + choices + ")");
  };
  auto add_eta = [&o](CLI::App* sub) {
    sub->add_option("--eta", o.eta, "Weight vector as a comma list or a file");
  };

  CLI::App* lognorm_cmd = app.add_subcommand("lognorm", "Weighted log norm of a matrix");
  add_common(lognorm_cmd);
  add_family(lognorm_cmd, "l1, linf, l2");
  add_eta(lognorm_cmd);

  CLI::App* classify_cmd = app.add_subcommand("classify", "Stability classes of a matrix");
  add_common(classify_cmd);
  add_eta(classify_cmd);

  CLI::App* certify_cmd = app.add_subcommand("certify", "Contraction certificate for a network model");
  add_common(certify_cmd);
  add_family(certify_cmd, "l1, linf");
  add_eta(certify_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Certify, then check the rate on simulated trajectories");
  add_common(verify_cmd);
  add_family(verify_cmd, "l1, linf");
  verify_cmd->add_option("--pairs", o.pairs, "Number of trajectory pairs");
  verify_cmd->add_option("--horizon", o.horizon, "Simulation horizon");
  verify_cmd->add_option("--step", o.step, "RK4 step");
  verify_cmd->add_option("--seed", o.seed, "Random seed");

  CLI::App* prune_cmd = app.add_subcommand("prune", "M-Hurwitz status of every principal submatrix");
  add_common(prune_cmd);
  prune_cmd->add_option("--remove-edge", o.edges, "Zero entry i,j (1-based) and compare Hurwitz status");
  prune_cmd->add_option("--shift", o.shift, "Diagonal shift applied before the edge comparison");

  CLI::App* worst_cmd = app.add_subcommand("worst-case", "Worst-case log norm over a diagonal scaling polytope");
  add_common(worst_cmd);
  add_family(worst_cmd, "l1, linf");
  add_eta(worst_cmd);
  worst_cmd->add_option("--route", o.route, "auto or general");

  CLI::App* multilure_cmd = app.add_subcommand("multilure-osl", "Fixed-weight bound for a multi-Lur'e model");
  add_common(multilure_cmd);
  add_family(multilure_cmd, "l1, linf");
  add_eta(multilure_cmd);

  std::vector<const char*> argv;
  argv.push_back("netcontract");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    json result;
    int code = kExitOk;
    if (lognorm_cmd->parsed()) {
      result = cmd_lognorm(o);
    } else if (classify_cmd->parsed()) {
      result = cmd_classify(o);
    } else if (certify_cmd->parsed()) {
      result = cmd_certify(o);
    } else if (verify_cmd->parsed()) {
      const ModelFile file = load_model_file(o.file);
      const NetworkModel& model = require_network(file);
      if (!file.activation) throw ValidationError("verify needs an \"activation\" entry in the model file");
      std::optional<NormFamily> family;
      if (!o.family.empty()) family = parse_family(o.family);
      const ContractionCertificate cert = certify(model, family);
      if (!cert.contracting) throw ValidationError("certificate absent: the model is not certified contracting");
      const SimReport report = verify_contraction(model, *file.activation, cert, o.pairs, o.horizon, o.step, o.seed);
      result = {{"certificate", to_json(cert)}, {"report", to_json(report)}};
      if (!report.passed) code = kExitNumerical;
    } else if (prune_cmd->parsed()) {
      result = cmd_prune(o);
    } else if (worst_cmd->parsed()) {
      result = cmd_worst_case(o);
    } else if (multilure_cmd->parsed()) {
      result = cmd_multilure_osl(o);
    }
    out << canonical_dump(result, o.indent) << '\n';
    return code;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace netcontract
