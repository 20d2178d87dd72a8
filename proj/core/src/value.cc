#include "polysize/value.h"

#include <cctype>
#include <charconv>

namespace polysize {

std::string Value::to_string() const {
  switch (kind) {
    case Kind::kInt: return std::to_string(integer);
    case Kind::kNull: return "NULL";
    case Kind::kLoc: return "@" + std::to_string(loc);
  }
  return "?";
}

Location Heap::alloc(Value hd, Value tl) {
  cells_.push_back({hd, tl});
  return cells_.size() - 1;
}

std::set<Location> footprint(const Heap& h, const Value& v) {
  std::set<Location> out;
  std::vector<Value> todo{v};
  while (!todo.empty()) {
    Value x = todo.back();
    todo.pop_back();
    if (!x.is_loc() || !h.contains(x.loc) || out.count(x.loc)) continue;
    out.insert(x.loc);
    todo.push_back(h.at(x.loc).hd);
    todo.push_back(h.at(x.loc).tl);
  }
  return out;
}

std::string Reading::to_string() const {
  if (is_int) return std::to_string(value);
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ",";
    out += items[i].to_string();
  }
  return out + "]";
}

namespace {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view s) : s_(s) {}

  Reading parse_all() {
    Reading r = parse();
    skip();
    if (i_ != s_.size()) fail("trailing characters");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError({1, static_cast<int>(i_) + 1},
                      "bad value literal: " + what);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }
  Reading parse() {
    skip();
    if (i_ < s_.size() && s_[i_] == '[') {
      ++i_;
      std::vector<Reading> items;
      skip();
      if (i_ < s_.size() && s_[i_] == ']') {
        ++i_;
        return Reading::list({});
      }
      while (true) {
        items.push_back(parse());
        skip();
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        if (i_ < s_.size() && s_[i_] == ']') {
          ++i_;
          return Reading::list(std::move(items));
        }
        fail("expected ',' or ']'");
      }
    }
    std::size_t start = i_;
    if (i_ < s_.size() && s_[i_] == '-') ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
      ++i_;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + i_, v);
    if (ec != std::errc() || ptr != s_.data() + i_ || start == i_)
      fail("expected an integer or a list");
    return Reading::integer(v);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

bool is_natural_constant(const Polynomial& p, std::int64_t& out) {
  auto c = p.as_constant();
  if (!c || !is_integer(*c) || *c < 0 || !c->get_num().fits_slong_p())
    return false;
  out = c->get_num().get_si();
  return true;
}

std::optional<Reading> models_in(const Value& v, const Heap& h,
                                 const SizedType& gt,
                                 std::set<Location>& excluded) {
  if (gt.is_int()) {
    if (!v.is_int()) return std::nullopt;
    return Reading::integer(v.integer);
  }
  if (gt.is_var()) return std::nullopt;
  std::int64_t n = 0;
  if (!is_natural_constant(gt.size(), n)) return std::nullopt;
  std::vector<Reading> items;
  std::vector<Location> path;
  Value cur = v;
  std::optional<Reading> result;
  for (std::int64_t i = 0; i < n; ++i) {
    if (!cur.is_loc() || !h.contains(cur.loc) || excluded.count(cur.loc))
      break;
    excluded.insert(cur.loc);
    path.push_back(cur.loc);
    auto w = models_in(h.at(cur.loc).hd, h, gt.elem(), excluded);
    if (!w) break;
    items.push_back(std::move(*w));
    cur = h.at(cur.loc).tl;
  }
  if (static_cast<std::int64_t>(items.size()) == n && cur.is_null())
    result = Reading::list(std::move(items));
  for (Location l : path) excluded.erase(l);
  return result;
}

Reading read_in(const Value& v, const Heap& h, std::set<Location>& path) {
  if (v.is_int()) return Reading::integer(v.integer);
  std::vector<Reading> items;
  std::vector<Location> seen;
  Value cur = v;
  while (cur.is_loc()) {
    if (!h.contains(cur.loc))
      throw EvalError("DanglingLocation",
                      "location " + std::to_string(cur.loc) +
                          " is not in the heap");
    if (path.count(cur.loc))
      throw EvalError("CyclicValue", "cyclic list structure");
    path.insert(cur.loc);
    seen.push_back(cur.loc);
    items.push_back(read_in(h.at(cur.loc).hd, h, path));
    cur = h.at(cur.loc).tl;
  }
  for (Location l : seen) path.erase(l);
  if (cur.is_int())
    throw EvalError("StuckEvaluation", "list tail is an integer");
  return Reading::list(std::move(items));
}

}  // namespace

Reading Reading::parse(std::string_view text) {
  return LiteralParser(text).parse_all();
}

std::optional<Reading> models(const Value& v, const Heap& h,
                              const SizedType& gt) {
  std::set<Location> excluded;
  return models_in(v, h, gt, excluded);
}

Reading read_value(const Value& v, const Heap& h) {
  std::set<Location> path;
  return read_in(v, h, path);
}

Value build_value(const Reading& r, Heap& h) {
  if (r.is_int) return Value::from_int(r.value);
  Value out = Value::null();
  for (auto it = r.items.rbegin(); it != r.items.rend(); ++it)
    out = Value::location(h.alloc(build_value(*it, h), out));
  return out;
}

namespace {

std::string lengths_string(const std::set<std::int64_t>& lengths) {
  std::string out = "{";
  for (auto it = lengths.begin(); it != lengths.end(); ++it) {
    if (it != lengths.begin()) out += ",";
    out += std::to_string(*it);
  }
  return out + "}";
}

}  // namespace

NonShapelyObservation::NonShapelyObservation(int level,
                                             std::set<std::int64_t> lengths)
    : Error("NonShapelyObservation",
            "lists at nesting level " + std::to_string(level) +
                " have different lengths " + lengths_string(lengths)),
      level_(level),
      lengths_(std::move(lengths)) {}

std::string LevelSize::to_string() const {
  return known ? std::to_string(length) : "?";
}

std::vector<LevelSize> measure_sizes(const Value& v, const Heap& h,
                                     int nesting) {
  std::vector<LevelSize> out;
  std::vector<Value> level{v};
  for (int j = 1; j <= nesting; ++j) {
    if (level.empty()) {
      out.push_back(LevelSize::incomplete());
      continue;
    }
    std::set<std::int64_t> lengths;
    std::vector<Value> next;
    for (const Value& list : level) {
      std::int64_t n = 0;
      Value cur = list;
      while (cur.is_loc()) {
        if (!h.contains(cur.loc))
          throw EvalError("DanglingLocation", "dangling list cell");
        next.push_back(h.at(cur.loc).hd);
        cur = h.at(cur.loc).tl;
        ++n;
      }
      if (cur.is_int())
        throw EvalError("StuckEvaluation",
                        "expected a list at nesting level " +
                            std::to_string(j));
      lengths.insert(n);
    }
    if (lengths.size() > 1) throw NonShapelyObservation(j, lengths);
    out.push_back(LevelSize::of(*lengths.begin()));
    level = std::move(next);
  }
  return out;
}

}  // namespace polysize
