// Copyright 2026 The Persuasion Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "persuasion/model.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "persuasion/lp.h"

namespace persuasion {
namespace {

using Json = nlohmann::json;

Rational json_rational(const Json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::exception&) {
      throw InvalidInstance(where + ": not a rational");
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InvalidInstance(where + ": expected \"p/q\"");
}

RMatrix json_table(const Json& j, const char* key, std::size_t d,
                   std::size_t n) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != d) {
    throw InvalidInstance(std::string(key) + ": expected " +
                          std::to_string(d) + " rows");
  }
  RMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n));
  for (std::size_t s = 0; s < d; ++s) {
    const Json& row = j[key][s];
    if (!row.is_array() || row.size() != n) {
      throw InvalidInstance(std::string(key) + "[" + std::to_string(s) +
                            "]: expected " + std::to_string(n) + " entries");
    }
    for (std::size_t a = 0; a < n; ++a) {
      m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(a)) =
          json_rational(row[a], std::string(key) + "[" + std::to_string(s) +
                                    "][" + std::to_string(a) + "]");
    }
  }
  return m;
}

Json table_json(const RMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index s = 0; s < m.rows(); ++s) {
    Json row = Json::array();
    for (Eigen::Index a = 0; a < m.cols(); ++a) row.push_back(m(s, a).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> numbered_labels(std::size_t k) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= k; ++i) labels.push_back("s" + std::to_string(i));
  return labels;
}

bool in_unit_interval(const Rational& r) {
  return r.sign() >= 0 && !(Rational(1) < r);
}

}  // namespace

void Instance::validate() const {
  validate_values();
  const auto ni = static_cast<Eigen::Index>(n);
  for (Eigen::Index a = 0; a < ni; ++a) {
    for (Eigen::Index b = a + 1; b < ni; ++b) {
      if (equal_vectors(RVector(receiver.col(a)), RVector(receiver.col(b)))) {
        throw InvalidInstance("actions " + std::to_string(a) + " and " +
                              std::to_string(b) +
                              " have identical receiver utilities");
      }
    }
  }
}

void Instance::validate_values() const {
  if (d < 1) throw InvalidInstance("d must be positive");
  if (n < 1) throw InvalidInstance("n must be positive");
  const auto di = static_cast<Eigen::Index>(d);
  const auto ni = static_cast<Eigen::Index>(n);
  if (prior.size() != di) throw InvalidInstance("prior length differs from d");
  if (receiver.rows() != di || receiver.cols() != ni) {
    throw InvalidInstance("receiver_utility is not d x n");
  }
  if (sender.rows() != di || sender.cols() != ni) {
    throw InvalidInstance("sender_utility is not d x n");
  }
  Rational total(0);
  for (Eigen::Index s = 0; s < di; ++s) {
    if (prior(s).sign() <= 0) {
      throw InvalidInstance("prior[" + std::to_string(s) +
                            "] is not strictly positive");
    }
    total += prior(s);
  }
  if (total != Rational(1)) throw InvalidInstance("prior does not sum to 1");
  for (Eigen::Index s = 0; s < di; ++s) {
    for (Eigen::Index a = 0; a < ni; ++a) {
      if (!in_unit_interval(receiver(s, a))) {
        throw InvalidInstance("receiver_utility[" + std::to_string(s) + "][" +
                              std::to_string(a) + "] outside [0, 1]");
      }
      if (!in_unit_interval(sender(s, a))) {
        throw InvalidInstance("sender_utility[" + std::to_string(s) + "][" +
                              std::to_string(a) + "] outside [0, 1]");
      }
    }
  }
}

std::size_t Instance::product_bits() const {
  std::size_t bits = 0;
  for (Eigen::Index s = 0; s < receiver.rows(); ++s) {
    for (Eigen::Index a = 0; a < receiver.cols(); ++a) {
      bits = std::max(bits, bit_complexity(prior(s) * receiver(s, a)));
    }
  }
  return bits;
}

std::size_t Instance::encoding_bits() const {
  std::size_t u = 0;
  for (Eigen::Index s = 0; s < receiver.rows(); ++s) {
    for (Eigen::Index a = 0; a < receiver.cols(); ++a) {
      u = std::max(u, bit_complexity(receiver(s, a)));
    }
  }
  return vector_bit_complexity(prior) + u;
}

Instance parse_instance(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw InvalidInstance(std::string("malformed instance file: ") + e.what());
  }
  Instance inst;
  if (!j.contains("d") || !j["d"].is_number_unsigned()) {
    throw InvalidInstance("d: expected a positive integer");
  }
  if (!j.contains("n") || !j["n"].is_number_unsigned()) {
    throw InvalidInstance("n: expected a positive integer");
  }
  inst.d = j["d"].get<std::size_t>();
  inst.n = j["n"].get<std::size_t>();
  if (inst.d < 1) throw InvalidInstance("d must be positive");
  if (inst.n < 1) throw InvalidInstance("n must be positive");
  if (!j.contains("prior") || !j["prior"].is_array() ||
      j["prior"].size() != inst.d) {
    throw InvalidInstance("prior: expected d entries");
  }
  inst.prior = RVector(static_cast<Eigen::Index>(inst.d));
  for (std::size_t s = 0; s < inst.d; ++s) {
    inst.prior(static_cast<Eigen::Index>(s)) =
        json_rational(j["prior"][s], "prior[" + std::to_string(s) + "]");
  }
  inst.receiver = json_table(j, "receiver_utility", inst.d, inst.n);
  inst.sender = json_table(j, "sender_utility", inst.d, inst.n);
  inst.validate();
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string instance_to_json(const Instance& inst) {
  // Keys in a fixed order so files are byte-stable.
  nlohmann::ordered_json j;
  j["d"] = inst.d;
  j["n"] = inst.n;
  Json prior = Json::array();
  for (Eigen::Index s = 0; s < inst.prior.size(); ++s) {
    prior.push_back(inst.prior(s).str());
  }
  j["prior"] = prior;
  j["receiver_utility"] = table_json(inst.receiver);
  j["sender_utility"] = table_json(inst.sender);
  return j.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << instance_to_json(inst);
  if (!out) throw std::runtime_error("write failed: " + path);
}

void SignalingScheme::validate() const {
  if (table.cols() < 1) throw InvalidScheme("scheme without signals");
  if (labels.size() != num_signals()) {
    throw InvalidScheme("label count differs from signal count");
  }
  for (Eigen::Index s = 0; s < table.rows(); ++s) {
    Rational total(0);
    for (Eigen::Index k = 0; k < table.cols(); ++k) {
      if (table(s, k).sign() < 0) throw InvalidScheme("negative probability");
      total += table(s, k);
    }
    if (total != Rational(1)) {
      throw InvalidScheme("row " + std::to_string(s) + " does not sum to 1");
    }
  }
}

std::size_t SignalingScheme::signal_index(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw UnknownSignal("unknown signal " + label);
  return static_cast<std::size_t>(it - labels.begin());
}

bool operator==(const SignalingScheme& a, const SignalingScheme& b) {
  if (a.labels != b.labels || a.table.rows() != b.table.rows() ||
      a.table.cols() != b.table.cols()) {
    return false;
  }
  for (Eigen::Index i = 0; i < a.table.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.table.cols(); ++k) {
      if (a.table(i, k) != b.table(i, k)) return false;
    }
  }
  return true;
}

SignalingScheme uninformative_scheme(std::size_t d) {
  SignalingScheme phi;
  phi.table = RMatrix::Constant(static_cast<Eigen::Index>(d), 1, Rational(1));
  phi.labels = {"s"};
  return phi;
}

SignalingScheme full_revelation_scheme(std::size_t d) {
  const auto di = static_cast<Eigen::Index>(d);
  SignalingScheme phi;
  phi.table = RMatrix::Identity(di, di);
  phi.labels = numbered_labels(d);
  return phi;
}

SignalingScheme two_signal_scheme(const RVector& x) {
  SignalingScheme phi;
  phi.table = RMatrix(x.size(), 2);
  for (Eigen::Index s = 0; s < x.size(); ++s) {
    phi.table(s, 0) = x(s);
    phi.table(s, 1) = Rational(1) - x(s);
  }
  phi.labels = {"s1", "s2"};
  return phi;
}

RVector slice_of(const SignalingScheme& phi, std::size_t signal) {
  if (signal >= phi.num_signals()) {
    throw UnknownSignal("signal index " + std::to_string(signal) +
                        " out of range");
  }
  return phi.table.col(static_cast<Eigen::Index>(signal));
}

RVector slice_of(const SignalingScheme& phi, const std::string& label) {
  return slice_of(phi, phi.signal_index(label));
}

RVector receiver_values(const Instance& inst, const RVector& x) {
  const auto ni = static_cast<Eigen::Index>(inst.n);
  RVector v = RVector::Zero(ni);
  for (Eigen::Index s = 0; s < x.size(); ++s) {
    if (x(s).is_zero()) continue;
    Rational w = inst.prior(s) * x(s);
    for (Eigen::Index a = 0; a < ni; ++a) {
      if (!inst.receiver(s, a).is_zero()) v(a) += w * inst.receiver(s, a);
    }
  }
  return v;
}

std::vector<Action> best_response_set(const Instance& inst, const RVector& x) {
  bool zero = true;
  for (Eigen::Index s = 0; s < x.size() && zero; ++s) zero = x(s).is_zero();
  if (zero) throw ZeroSlice("best response to the zero slice");
  RVector v = receiver_values(inst, x);
  Rational best = v(0);
  for (Eigen::Index a = 1; a < v.size(); ++a) {
    if (best < v(a)) best = v(a);
  }
  std::vector<Action> out;
  for (Eigen::Index a = 0; a < v.size(); ++a) {
    if (v(a) == best) out.push_back(static_cast<Action>(a));
  }
  return out;
}

Action chosen_action(const Instance& inst, const RVector& x) {
  std::vector<Action> br = best_response_set(inst, x);
  if (br.size() == 1) return br[0];
  Action best = br[0];
  Rational best_value;
  bool first = true;
  for (Action a : br) {
    Rational u(0);
    for (Eigen::Index s = 0; s < x.size(); ++s) {
      u += inst.prior(s) * x(s) *
           inst.sender(s, static_cast<Eigen::Index>(a));
    }
    if (first || best_value < u) {
      best = a;
      best_value = u;
      first = false;
    }
  }
  return best;
}

Rational sender_expected_utility(const Instance& inst,
                                 const SignalingScheme& phi) {
  Rational total(0);
  for (std::size_t k = 0; k < phi.num_signals(); ++k) {
    RVector x = slice_of(phi, k);
    bool zero = true;
    for (Eigen::Index s = 0; s < x.size() && zero; ++s) zero = x(s).is_zero();
    if (zero) continue;
    const auto a = static_cast<Eigen::Index>(chosen_action(inst, x));
    for (Eigen::Index s = 0; s < x.size(); ++s) {
      if (x(s).is_zero()) continue;
      total += inst.prior(s) * x(s) * inst.sender(s, a);
    }
  }
  return total;
}

OptResult compute_opt(const Instance& inst) {
  const auto d = static_cast<Eigen::Index>(inst.d);
  const auto n = static_cast<Eigen::Index>(inst.n);
  // Variable a * d + s holds the probability of recommending a in state s.
  LinearProgram lp(n * d);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index s = 0; s < d; ++s) {
      lp.objective(a * d + s) = inst.prior(s) * inst.sender(s, a);
    }
  }
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      if (a == b) continue;
      RVector row = RVector::Zero(n * d);
      for (Eigen::Index s = 0; s < d; ++s) {
        row(a * d + s) =
            inst.prior(s) * (inst.receiver(s, a) - inst.receiver(s, b));
      }
      lp.add_row(std::move(row), Relation::kGreaterEqual, Rational(0));
    }
  }
  for (Eigen::Index s = 0; s < d; ++s) {
    RVector row = RVector::Zero(n * d);
    for (Eigen::Index a = 0; a < n; ++a) row(a * d + s) = Rational(1);
    lp.add_row(std::move(row), Relation::kEqual, Rational(1));
  }
  LpSolution sol = solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("persuasive program is not optimal");
  }
  OptResult out;
  out.value = sol.value;
  out.witness.table = RMatrix(d, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index s = 0; s < d; ++s) {
      out.witness.table(s, a) = sol.point(a * d + s);
    }
    out.witness.labels.push_back("a" + std::to_string(a + 1));
  }
  return out;
}

Hyperplane true_separating_hyperplane(const Instance& inst, Action i,
                                      Action j) {
  if (i == j) throw EqualActions("separating hyperplane of an action with itself");
  RVector c(static_cast<Eigen::Index>(inst.d));
  const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
  for (Eigen::Index s = 0; s < c.size(); ++s) {
    c(s) = inst.prior(s) * (inst.receiver(s, ii) - inst.receiver(s, jj));
  }
  return Hyperplane(std::move(c), Rational(0));
}

Halfspace true_halfspace(const Instance& inst, Action i, Action j) {
  if (i == j) throw EqualActions("separating halfspace of an action with itself");
  RVector c(static_cast<Eigen::Index>(inst.d));
  const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
  for (Eigen::Index s = 0; s < c.size(); ++s) {
    c(s) = inst.prior(s) * (inst.receiver(s, ii) - inst.receiver(s, jj));
  }
  return Halfspace(std::move(c), Rational(0));
}

PosteriorForm posterior_form(const Instance& inst, const SignalingScheme& phi) {
  PosteriorForm form;
  for (std::size_t k = 0; k < phi.num_signals(); ++k) {
    RVector x = slice_of(phi, k);
    RVector w(x.size());
    Rational mass(0);
    for (Eigen::Index s = 0; s < x.size(); ++s) {
      w(s) = inst.prior(s) * x(s);
      mass += w(s);
    }
    if (mass.is_zero()) continue;
    for (Eigen::Index s = 0; s < x.size(); ++s) w(s) /= mass;
    auto [it, inserted] = form.emplace(std::move(w), mass);
    if (!inserted) it->second += mass;
  }
  return form;
}

}  // namespace persuasion
