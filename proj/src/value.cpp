#include "setasp/value.hpp"

#include <algorithm>
#include <stdexcept>

namespace setasp {

struct Value::Node {
  std::string name;
  std::vector<Value> items;
  std::size_t hash = 0;
  int depth = 0;
  int rank = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::string kEmptyName;

}  // namespace

Value Value::integer(std::int64_t v) { return Value(Kind::Int, v, nullptr); }

Value Value::symbol(std::string name, std::vector<Value> args) {
  auto node = std::make_shared<Node>();
  std::size_t h = mix(std::hash<std::string>{}(name), 0x51);
  int depth = 0;
  int rank = 0;
  for (const auto& a : args) {
    if (a.is_undef()) throw std::invalid_argument("undefined value inside Herbrand term");
    if (a.is_tuple()) throw std::invalid_argument("tuple inside Herbrand term");
    h = mix(h, a.hash());
    depth = std::max(depth, a.herbrand_depth() + 1);
    rank = std::max(rank, a.set_rank());
  }
  node->name = std::move(name);
  node->items = std::move(args);
  node->hash = h;
  node->depth = depth;
  node->rank = rank;
  return Value(Kind::Symbol, 0, std::move(node));
}

Value Value::tuple(std::vector<Value> elems) {
  if (elems.empty()) throw std::invalid_argument("empty tuple");
  if (elems.size() == 1) return std::move(elems.front());
  auto node = std::make_shared<Node>();
  std::size_t h = 0x7f;
  int depth = 0;
  int rank = 0;
  for (const auto& e : elems) {
    if (e.is_undef()) throw std::invalid_argument("undefined value inside tuple");
    if (e.is_tuple()) throw std::invalid_argument("nested tuple");
    h = mix(h, e.hash());
    depth = std::max(depth, e.herbrand_depth());
    rank = std::max(rank, e.set_rank());
  }
  node->items = std::move(elems);
  node->hash = h;
  node->depth = depth;
  node->rank = rank;
  return Value(Kind::Tuple, 0, std::move(node));
}

Value Value::set(std::vector<Value> members) {
  sort_unique(members);
  auto node = std::make_shared<Node>();
  std::size_t h = 0x5e7;
  int depth = 0;
  int rank = 0;
  for (const auto& m : members) {
    if (m.is_undef()) throw std::invalid_argument("undefined value inside set");
    if (m.arity() != members.front().arity())
      throw std::invalid_argument("set members of different arity");
    h = mix(h, m.hash());
    depth = std::max(depth, m.herbrand_depth());
    rank = std::max(rank, m.set_rank());
  }
  node->items = std::move(members);
  node->hash = h;
  node->depth = depth;
  node->rank = rank + 1;
  return Value(Kind::Set, 0, std::move(node));
}

const std::string& Value::name() const { return node_ ? node_->name : kEmptyName; }

std::span<const Value> Value::items() const {
  if (!node_) return {};
  return node_->items;
}

std::size_t Value::member_arity() const {
  if (!is_set() || node_->items.empty()) return 0;
  return node_->items.front().arity();
}

int Value::herbrand_depth() const { return node_ ? node_->depth : 0; }

int Value::set_rank() const { return node_ ? node_->rank : 0; }

std::size_t Value::hash() const {
  switch (kind_) {
    case Kind::Undef: return 0x0dd;
    case Kind::Int: return mix(0x1, std::hash<std::int64_t>{}(int_));
    default: return mix(static_cast<std::size_t>(kind_), node_->hash);
  }
}

std::string Value::to_string() const {
  switch (kind_) {
    case Kind::Undef: return "u";
    case Kind::Int: return std::to_string(int_);
    case Kind::Symbol: {
      std::string s = node_->name;
      if (!node_->items.empty()) {
        s += '(';
        for (std::size_t i = 0; i < node_->items.size(); ++i) {
          if (i) s += ',';
          s += node_->items[i].to_string();
        }
        s += ')';
      }
      return s;
    }
    case Kind::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < node_->items.size(); ++i) {
        if (i) s += ',';
        s += node_->items[i].to_string();
      }
      return s + ')';
    }
    case Kind::Set: {
      std::string s = "{";
      for (std::size_t i = 0; i < node_->items.size(); ++i) {
        if (i) s += ',';
        s += node_->items[i].to_string();
      }
      return s + '}';
    }
  }
  return {};
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Value::Kind::Undef: return true;
    case Value::Kind::Int: return a.int_ == b.int_;
    default:
      if (a.node_ == b.node_) return true;
      if (a.node_->hash != b.node_->hash) return false;
      return a.node_->name == b.node_->name && a.node_->items == b.node_->items;
  }
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  switch (a.kind_) {
    case Value::Kind::Undef: return std::strong_ordering::equal;
    case Value::Kind::Int: return a.int_ <=> b.int_;
    default: {
      if (a.node_ == b.node_) return std::strong_ordering::equal;
      if (auto c = a.node_->name <=> b.node_->name; c != 0) return c;
      const auto& x = a.node_->items;
      const auto& y = b.node_->items;
      if (a.kind_ == Value::Kind::Set) {
        // Smaller sets first, then element-wise.
        if (auto c = x.size() <=> y.size(); c != 0) return c;
      }
      return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
    }
  }
}

std::size_t Atom::hash() const {
  std::size_t h = std::hash<std::string>{}(pred);
  for (const auto& a : args) h = mix(h, a.hash());
  return h;
}

std::string Atom::to_string() const {
  std::string s = pred;
  if (!args.empty()) {
    s += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) s += ',';
      s += args[i].to_string();
    }
    s += ')';
  }
  return s;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (auto c = a.pred <=> b.pred; c != 0) return c;
  if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(),
                                                b.args.end());
}

void sort_unique(std::vector<Value>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

void sort_unique(std::vector<Atom>& atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
}

}  // namespace setasp
