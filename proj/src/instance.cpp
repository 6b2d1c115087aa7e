#include "mpc/instance.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "mpc/errors.hpp"

namespace mpc {

namespace {

using OrderedJson = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr double kRangeTol = 1e-9;

std::string class_name(SuccessFunction::Tag tag) {
  switch (tag) {
    case SuccessFunction::Tag::Additive:
      return "additive";
    case SuccessFunction::Tag::BudgetAdditive:
      return "budget_additive";
    case SuccessFunction::Tag::Coverage:
      return "coverage";
    case SuccessFunction::Tag::Xos:
      return "xos";
  }
  return "?";
}

OrderedJson vector_to_json(const Eigen::VectorXd& v) {
  OrderedJson arr = OrderedJson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const OrderedJson& arr, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array of numbers");
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw ParseError(where + ": entry " + std::to_string(i) + " is not a number");
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return v;
}

OrderedJson function_to_json(const SuccessFunction& f) {
  OrderedJson j;
  j["type"] = class_name(f.tag);
  switch (f.tag) {
    case SuccessFunction::Tag::Additive:
      j["values"] = vector_to_json(f.values);
      break;
    case SuccessFunction::Tag::BudgetAdditive:
      j["values"] = vector_to_json(f.values);
      j["budget"] = f.budget;
      break;
    case SuccessFunction::Tag::Coverage:
      j["element_weights"] = vector_to_json(f.element_weights);
      j["agent_elements"] = f.agent_elements;
      break;
    case SuccessFunction::Tag::Xos: {
      OrderedJson clauses = OrderedJson::array();
      for (Eigen::Index l = 0; l < f.clauses.rows(); ++l) {
        OrderedJson row = OrderedJson::array();
        for (Eigen::Index i = 0; i < f.clauses.cols(); ++i) row.push_back(f.clauses(l, i));
        clauses.push_back(row);
      }
      j["clauses"] = clauses;
      break;
    }
  }
  return j;
}

SuccessFunction function_from_json(const OrderedJson& j, int n_agents, int index) {
  const std::string where = "functions[" + std::to_string(index) + "]";
  if (!j.is_object() || !j.contains("type"))
    throw ParseError(where + ": missing \"type\"");
  const std::string type = j.at("type").get<std::string>();
  if (type == "additive") {
    if (!j.contains("values")) throw ParseError(where + ": missing \"values\"");
    return SuccessFunction::additive(vector_from_json(j.at("values"), where + ".values"));
  }
  if (type == "budget_additive") {
    if (!j.contains("values") || !j.contains("budget"))
      throw ParseError(where + ": budget_additive needs \"values\" and \"budget\"");
    return SuccessFunction::budget_additive(vector_from_json(j.at("values"), where + ".values"),
                                            j.at("budget").get<double>());
  }
  if (type == "coverage") {
    if (!j.contains("element_weights") || !j.contains("agent_elements"))
      throw ParseError(where + ": coverage needs \"element_weights\" and \"agent_elements\"");
    auto weights = vector_from_json(j.at("element_weights"), where + ".element_weights");
    std::vector<std::vector<int>> sets;
    for (const auto& row : j.at("agent_elements")) {
      std::vector<int> s;
      for (const auto& e : row) s.push_back(e.get<int>());
      sets.push_back(std::move(s));
    }
    return SuccessFunction::coverage(std::move(weights), std::move(sets));
  }
  if (type == "xos") {
    if (!j.contains("clauses")) throw ParseError(where + ": missing \"clauses\"");
    const auto& rows = j.at("clauses");
    if (!rows.is_array() || rows.empty())
      throw ParseError(where + ": XOS needs a non-empty clause list");
    Eigen::MatrixXd clauses(rows.size(), n_agents);
    for (std::size_t l = 0; l < rows.size(); ++l) {
      if (static_cast<int>(rows[l].size()) != n_agents)
        throw ParseError(where + ": clause " + std::to_string(l) + " has wrong length");
      for (int i = 0; i < n_agents; ++i)
        clauses(static_cast<Eigen::Index>(l), i) = rows[l][i].get<double>();
    }
    return SuccessFunction::xos(std::move(clauses));
  }
  throw ParseError(where + ": unknown function type \"" + type + "\"");
}

void validate_function(const SuccessFunction& f, int n_agents, int index,
                       std::vector<std::string>& out) {
  const std::string where = "functions[" + std::to_string(index) + "]";
  if (f.agent_count() != n_agents) {
    out.push_back(where + ": dimension mismatch (expected " + std::to_string(n_agents) +
                  " agents, got " + std::to_string(f.agent_count()) + ")");
    return;
  }
  auto check_nonneg = [&](const Eigen::VectorXd& v, const std::string& field) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (!(v[i] >= 0.0) || !std::isfinite(v[i]))
        out.push_back(where + "." + field + "[" + std::to_string(i) + "]: negative or non-finite entry");
    }
  };
  switch (f.tag) {
    case SuccessFunction::Tag::Additive:
      check_nonneg(f.values, "values");
      break;
    case SuccessFunction::Tag::BudgetAdditive:
      check_nonneg(f.values, "values");
      if (!(f.budget >= 0.0) || !std::isfinite(f.budget))
        out.push_back(where + ".budget: must be a non-negative real");
      break;
    case SuccessFunction::Tag::Coverage: {
      check_nonneg(f.element_weights, "element_weights");
      const int universe = static_cast<int>(f.element_weights.size());
      for (std::size_t a = 0; a < f.agent_elements.size(); ++a) {
        for (int e : f.agent_elements[a]) {
          if (e < 0 || e >= universe)
            out.push_back(where + ".agent_elements[" + std::to_string(a) +
                          "]: element index " + std::to_string(e) + " out of range");
        }
      }
      break;
    }
    case SuccessFunction::Tag::Xos: {
      if (f.clauses.rows() == 0) {
        out.push_back(where + ".clauses: XOS clause list is empty");
        break;
      }
      for (Eigen::Index l = 0; l < f.clauses.rows(); ++l)
        for (Eigen::Index i = 0; i < f.clauses.cols(); ++i)
          if (!(f.clauses(l, i) >= 0.0) || !std::isfinite(f.clauses(l, i)))
            out.push_back(where + ".clauses[" + std::to_string(l) + "][" + std::to_string(i) +
                          "]: negative or non-finite entry");
      break;
    }
  }
  if (f.analytic_max() > 1.0 + kRangeTol)
    out.push_back(where + ": function exceeds probability range (analytic max " +
                  std::to_string(f.analytic_max()) + " > 1)");
}

}  // namespace

double min_positive_singleton(const Instance& instance) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : instance.functions)
    for (int i = 0; i < instance.n_agents; ++i) {
      const double v = singleton_value(f, i);
      if (v > 0.0) best = std::min(best, v);
    }
  return best;
}

double max_singleton(const Instance& instance) {
  double best = 0.0;
  for (const auto& f : instance.functions)
    for (int i = 0; i < instance.n_agents; ++i)
      best = std::max(best, singleton_value(f, i));
  return best;
}

double effective_epsilon(const Instance& instance, const Params& params) {
  const double floor = min_positive_singleton(instance);
  if (params.epsilon.has_value()) {
    const double eps = *params.epsilon;
    if (!(eps > 0.0)) throw PreconditionError("epsilon must be positive");
    if (std::isfinite(floor) && !(eps < params.delta * floor))
      throw PreconditionError("epsilon must be strictly below delta * min positive singleton (" +
                              std::to_string(params.delta * floor) + ")");
    return eps;
  }
  if (!std::isfinite(floor)) return 1e-9;  // degenerate: every singleton is zero
  return 0.5 * params.delta * floor;
}

std::vector<std::string> validate(const Instance& instance) {
  std::vector<std::string> out;
  if (instance.n_agents < 1) out.push_back("agents: need at least one agent");
  if (instance.n_projects < 1) out.push_back("projects: need at least one project");
  if (instance.costs.rows() != instance.n_agents || instance.costs.cols() != instance.n_projects) {
    out.push_back("costs: expected a " + std::to_string(instance.n_agents) + "x" +
                  std::to_string(instance.n_projects) + " matrix");
  } else {
    for (int i = 0; i < instance.n_agents; ++i)
      for (int j = 0; j < instance.n_projects; ++j) {
        const double c = instance.costs(i, j);
        if (!std::isfinite(c))
          out.push_back("costs[" + std::to_string(i) + "][" + std::to_string(j) + "]: non-finite cost");
        else if (c < 0.0)
          out.push_back("costs[" + std::to_string(i) + "][" + std::to_string(j) + "]: negative cost");
      }
  }
  if (static_cast<int>(instance.functions.size()) != instance.n_projects) {
    out.push_back("functions: expected one per project (" + std::to_string(instance.n_projects) +
                  "), got " + std::to_string(instance.functions.size()));
  } else {
    for (int j = 0; j < instance.n_projects; ++j)
      validate_function(instance.functions[j], instance.n_agents, j, out);
  }
  return out;
}

Instance instance_from_json_text(const std::string& text) {
  OrderedJson j;
  try {
    j = OrderedJson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("top level must be a JSON object");
  if (!j.contains("version")) throw ParseError("missing \"version\" field");
  if (j.at("version").get<int>() != kSchemaVersion)
    throw ParseError("schema-version mismatch: expected " + std::to_string(kSchemaVersion) +
                     ", got " + j.at("version").dump());
  for (const char* key : {"agents", "projects", "costs", "functions"})
    if (!j.contains(key)) throw ParseError(std::string("missing \"") + key + "\" field");

  Instance instance;
  instance.n_agents = j.at("agents").get<int>();
  instance.n_projects = j.at("projects").get<int>();
  const auto& costs = j.at("costs");
  if (!costs.is_array()) throw ParseError("costs: expected an array of rows");
  instance.costs.resize(costs.size(), costs.empty() ? 0 : costs[0].size());
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (static_cast<Eigen::Index>(costs[i].size()) != instance.costs.cols())
      throw ParseError("costs: row " + std::to_string(i) + " has inconsistent length");
    for (std::size_t k = 0; k < costs[i].size(); ++k)
      instance.costs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          costs[i][k].get<double>();
  }
  const auto& functions = j.at("functions");
  if (!functions.is_array()) throw ParseError("functions: expected an array");
  for (std::size_t k = 0; k < functions.size(); ++k)
    instance.functions.push_back(
        function_from_json(functions[k], instance.n_agents, static_cast<int>(k)));

  auto violations = validate(instance);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return instance;
}

std::string instance_to_json_text(const Instance& instance) {
  OrderedJson j;
  j["version"] = kSchemaVersion;
  j["agents"] = instance.n_agents;
  j["projects"] = instance.n_projects;
  OrderedJson costs = OrderedJson::array();
  for (int i = 0; i < instance.n_agents; ++i) {
    OrderedJson row = OrderedJson::array();
    for (int k = 0; k < instance.n_projects; ++k) row.push_back(instance.costs(i, k));
    costs.push_back(row);
  }
  j["costs"] = costs;
  OrderedJson functions = OrderedJson::array();
  for (const auto& f : instance.functions) functions.push_back(function_to_json(f));
  j["functions"] = functions;
  return j.dump(2) + "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_json_text(buf.str());
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file: " + path);
  out << instance_to_json_text(instance);
}

std::string allocation_to_json_text(const Allocation& allocation) {
  OrderedJson arr = OrderedJson::array();
  for (int a : allocation.assignment) {
    if (a == kUnassigned)
      arr.push_back(nullptr);
    else
      arr.push_back(a);
  }
  return arr.dump();
}

}  // namespace mpc
