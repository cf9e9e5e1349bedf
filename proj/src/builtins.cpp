#include "setasp/builtins.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>

namespace setasp {

Value aggregate_eval(std::string_view f, const Value& s) {
  if (!s.is_set()) return Value::undef();
  auto items = s.items();
  if (f == "count") return Value::integer(static_cast<std::int64_t>(items.size()));
  if (f == "sum") {
    std::int64_t total = 0;
    for (const auto& t : items) {
      const Value& first = t.is_tuple() ? t.items()[0] : t;
      if (!first.is_int()) return Value::undef();
      if (__builtin_add_overflow(total, first.as_int(), &total)) return Value::undef();
    }
    return Value::integer(total);
  }
  if (f == "max" || f == "min") {
    if (items.empty()) return Value::undef();
    for (const auto& t : items)
      if (!t.is_int()) return Value::undef();
    // Members are sorted, integers ascending.
    return f == "max" ? items.back() : items.front();
  }
  return Value::undef();
}

Value arith_eval(std::string_view op, const Value& a, const Value& b) {
  if (!a.is_int() || !b.is_int()) return Value::undef();
  std::int64_t x = a.as_int();
  std::int64_t y = b.as_int();
  std::int64_t r = 0;
  bool overflow = false;
  switch (op.empty() ? '\0' : op[0]) {
    case '+': overflow = __builtin_add_overflow(x, y, &r); break;
    case '-': overflow = __builtin_sub_overflow(x, y, &r); break;
    case '*': overflow = __builtin_mul_overflow(x, y, &r); break;
    case '/':
      if (y == 0 || (x == INT64_MIN && y == -1) || x % y != 0) return Value::undef();
      r = x / y;
      break;
    default: return Value::undef();
  }
  if (overflow) return Value::undef();
  return Value::integer(r);
}

Value set_op_eval(std::string_view op, const Value& a, const Value& b) {
  if (!a.is_set() || !b.is_set()) return Value::undef();
  if (a.size() > 0 && b.size() > 0 && a.member_arity() != b.member_arity()) return Value::undef();
  auto x = a.items();
  auto y = b.items();
  std::vector<Value> out;
  if (op == "|") {
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  } else if (op == "&") {
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  } else if (op == "\\") {
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  } else {
    return Value::undef();
  }
  return Value::set(std::move(out));
}

bool relation_holds(std::string_view rel, const Value& a, const Value& b) {
  if (rel == "!=") return a != b;
  if (rel == "in") {
    if (!b.is_set()) return false;
    auto items = b.items();
    return std::binary_search(items.begin(), items.end(), a);
  }
  if (!a.is_int() || !b.is_int()) return false;
  std::int64_t x = a.as_int();
  std::int64_t y = b.as_int();
  if (rel == "<=") return x <= y;
  if (rel == ">=") return x >= y;
  if (rel == "<") return x < y;
  if (rel == ">") return x > y;
  return false;
}

}  // namespace setasp
