#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "osl/errors.hpp"
#include "osl/product.hpp"

namespace osl {

// A propositional literal; (atom, negated) is the canonical identity of the
// formula. The formula language is restricted to literals.
struct Literal {
  std::string atom;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;

  std::string str() const { return negated ? "!" + atom : atom; }
};

inline Literal pos(std::string atom) { return Literal{std::move(atom), false}; }
inline Literal neg(std::string atom) { return Literal{std::move(atom), true}; }

struct LiteralHash {
  std::size_t operator()(const Literal& l) const noexcept {
    std::size_t h = std::hash<std::string>{}(l.atom);
    return h ^ (l.negated ? 0x9e3779b97f4a7c15ull : 0);
  }
};

using RecordId = std::int64_t;

struct BeliefRecord {
  RecordId id = 0;
  Literal literal;
  NodeId node = 0;
  double weight = 0.0;
  bool live = true;
};

// Belief store plus the (formula, node) -> credibility cache.
//
// The cache keeps one row per formula, allocated lazily on first use; a cell
// holding 0 means "no entry" (unsupported formulas have credibility 0, so the
// two states are indistinguishable by contract). Cache maintenance is the
// propagation module's job; insert_raw never touches it.
//
// Single-writer: mutations need exclusive access, concurrent reads between
// mutations are fine.
class BeliefBase {
 public:
  explicit BeliefBase(const OslCarrier& carrier) : carrier_(&carrier) {}

  const OslCarrier& carrier() const noexcept { return *carrier_; }

  /// Store and index a record without propagating it.
  const BeliefRecord& insert_raw(const Literal& literal, NodeId node,
                                 double weight) {
    return *insert_raw_with_row(literal, node, weight).first;
  }

  /// insert_raw plus cache-row access in one formula lookup; the propagation
  /// hot path uses this to avoid hashing the literal twice.
  std::pair<const BeliefRecord*, std::vector<double>*> insert_raw_with_row(
      const Literal& literal, NodeId node, double weight) {
    if (!(weight >= 0.0 && weight <= 1.0)) throw WeightOutOfRange(weight);
    if (node < 0 || node >= carrier_->size())
      throw InvalidNode("node id " + std::to_string(node) + " not in carrier of size " +
                        std::to_string(carrier_->size()));
    const RecordId id = static_cast<RecordId>(records_.size());
    records_.push_back(BeliefRecord{id, literal, node, weight, true});
    Formula& f = formula_entry(literal);
    if (f.record_ids.empty()) f.record_ids.reserve(16);
    f.record_ids.push_back(id);
    if (f.cred.empty()) f.cred.assign(static_cast<std::size_t>(carrier_->size()), 0.0);
    ++live_count_;
    return {&records_.back(), &f.cred};
  }

  /// Pre-size the record store; purely a capacity hint.
  void reserve(std::size_t records) { records_.reserve(records); }

  const BeliefRecord& record(RecordId id) const {
    if (id < 0 || id >= static_cast<RecordId>(records_.size()))
      throw IndexOutOfRange("no record with id " + std::to_string(id));
    return records_[static_cast<std::size_t>(id)];
  }

  bool has_record(RecordId id) const {
    return id >= 0 && id < static_cast<RecordId>(records_.size());
  }

  std::size_t record_count() const noexcept { return records_.size(); }
  std::size_t live_count() const noexcept { return live_count_; }
  const std::vector<BeliefRecord>& records() const noexcept { return records_; }

  void mark_removed(RecordId id) {
    if (!has_record(id)) throw IndexOutOfRange("no record with id " + std::to_string(id));
    BeliefRecord& r = records_[static_cast<std::size_t>(id)];
    if (r.live) {
      r.live = false;
      --live_count_;
    }
  }

  /// Cached credibility of a literal at a node; 0 when unsupported.
  double cred(const Literal& literal, NodeId node) const {
    check_node(node);
    auto it = formulas_.find(literal);
    if (it == formulas_.end() || it->second.cred.empty()) return 0.0;
    return it->second.cred[static_cast<std::size_t>(node)];
  }

  /// Ids of live records that support `literal` at `node` (record node below
  /// or equal to the query node), ascending.
  std::vector<RecordId> support_set(const Literal& literal, NodeId node) const {
    check_node(node);
    std::vector<RecordId> out;
    auto it = formulas_.find(literal);
    if (it == formulas_.end()) return out;
    for (RecordId id : it->second.record_ids) {
      const BeliefRecord& r = records_[static_cast<std::size_t>(id)];
      if (r.live && carrier_->leq(r.node, node)) out.push_back(id);
    }
    return out;
  }

  /// All literals with positive credibility at `node`, sorted.
  std::vector<Literal> supported_theory(NodeId node) const {
    check_node(node);
    std::vector<Literal> out;
    for (const auto& [literal, f] : formulas_) {
      if (!f.cred.empty() && f.cred[static_cast<std::size_t>(node)] > 0.0)
        out.push_back(literal);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Every formula ever inserted (live or not), sorted.
  std::vector<Literal> known_literals() const {
    std::vector<Literal> out;
    out.reserve(formulas_.size());
    for (const auto& [literal, f] : formulas_) out.push_back(literal);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Atoms appearing in any live record, sorted.
  std::vector<std::string> live_atoms() const {
    std::vector<std::string> out;
    for (const auto& [literal, f] : formulas_) {
      for (RecordId id : f.record_ids) {
        if (records_[static_cast<std::size_t>(id)].live) {
          out.push_back(literal.atom);
          break;
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<RecordId> record_ids(const Literal& literal) const {
    auto it = formulas_.find(literal);
    if (it == formulas_.end()) return {};
    return it->second.record_ids;
  }

  // -- cache plumbing for the propagation module ---------------------------

  const std::vector<double>* cred_row(const Literal& literal) const {
    auto it = formulas_.find(literal);
    if (it == formulas_.end() || it->second.cred.empty()) return nullptr;
    return &it->second.cred;
  }

  std::vector<double>& mutable_cred_row(const Literal& literal) {
    Formula& f = formula_entry(literal);
    if (f.cred.empty()) f.cred.assign(static_cast<std::size_t>(carrier_->size()), 0.0);
    return f.cred;
  }

  void clear_row(const Literal& literal) {
    auto it = formulas_.find(literal);
    if (it != formulas_.end()) it->second.cred.clear();
  }

  /// Drop the whole cache, keeping records. Propagation rebuilds it.
  void clear_cache() {
    for (auto& [literal, f] : formulas_) f.cred.clear();
  }

  /// Sparse, deterministic view of the cache: positive entries only.
  std::map<Literal, std::vector<std::pair<NodeId, double>>> cache_snapshot() const {
    std::map<Literal, std::vector<std::pair<NodeId, double>>> out;
    for (const auto& [literal, f] : formulas_) {
      if (f.cred.empty()) continue;
      std::vector<std::pair<NodeId, double>> cells;
      for (std::size_t e = 0; e < f.cred.size(); ++e)
        if (f.cred[e] > 0.0) cells.emplace_back(static_cast<NodeId>(e), f.cred[e]);
      if (!cells.empty()) out.emplace(literal, std::move(cells));
    }
    return out;
  }

  // -- instrumentation ------------------------------------------------------

  void note_visits(std::uint64_t n) {
    last_visits_ = n;
    total_visits_ += n;
  }
  std::uint64_t last_visits() const noexcept { return last_visits_; }
  std::uint64_t total_visits() const noexcept { return total_visits_; }

 private:
  void check_node(NodeId node) const {
    if (node < 0 || node >= carrier_->size())
      throw InvalidNode("node id " + std::to_string(node) + " not in carrier of size " +
                        std::to_string(carrier_->size()));
  }

  struct Formula {
    std::vector<RecordId> record_ids;
    std::vector<double> cred;  // empty until first cache write; 0 == absent
  };

  // Memo of the last formula looked up. Insert streams repeat literals, and
  // the map's nodes are stable, so caching one pointer skips most hashing.
  // Copies start cold; the pointer must never cross bases.
  struct FormulaMemo {
    const Literal* key = nullptr;
    Formula* value = nullptr;
    FormulaMemo() = default;
    FormulaMemo(const FormulaMemo&) {}
    FormulaMemo& operator=(const FormulaMemo&) {
      key = nullptr;
      value = nullptr;
      return *this;
    }
  };

  Formula& formula_entry(const Literal& literal) {
    if (memo_.value && *memo_.key == literal) return *memo_.value;
    auto [it, inserted] = formulas_.try_emplace(literal);
    memo_.key = &it->first;
    memo_.value = &it->second;
    return it->second;
  }

  const OslCarrier* carrier_;
  std::vector<BeliefRecord> records_;
  std::unordered_map<Literal, Formula, LiteralHash> formulas_;
  FormulaMemo memo_;
  std::size_t live_count_ = 0;
  std::uint64_t last_visits_ = 0;
  std::uint64_t total_visits_ = 0;
};

}  // namespace osl
