#ifndef POLYSIZE_VALUE_H
#define POLYSIZE_VALUE_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "polysize/errors.h"
#include "polysize/sized_type.h"

namespace polysize {

using Location = std::size_t;

struct Value {
  enum class Kind { kInt, kNull, kLoc };
  Kind kind = Kind::kNull;
  std::int64_t integer = 0;
  Location loc = 0;

  static Value from_int(std::int64_t v) { return {Kind::kInt, v, 0}; }
  static Value null() { return {}; }
  static Value location(Location l) { return {Kind::kLoc, 0, l}; }

  bool is_int() const { return kind == Kind::kInt; }
  bool is_null() const { return kind == Kind::kNull; }
  bool is_loc() const { return kind == Kind::kLoc; }

  friend bool operator==(const Value&, const Value&) = default;
  std::string to_string() const;
};

struct Cell {
  Value hd;
  Value tl;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Append-only: allocation never reuses a location.
class Heap {
 public:
  Location alloc(Value hd, Value tl);
  bool contains(Location l) const { return l < cells_.size(); }
  const Cell& at(Location l) const { return cells_.at(l); }
  // Direct cell access for tests of the model relation.
  Cell& mutable_at(Location l) { return cells_.at(l); }
  std::size_t size() const { return cells_.size(); }

 private:
  std::vector<Cell> cells_;
};

using Store = std::map<std::string, Value>;

// Locations reachable from v; dangling locations are excluded.
std::set<Location> footprint(const Heap& h, const Value& v);

// Set-theoretic reading of a value: an integer or a sequence of readings.
struct Reading {
  bool is_int = false;
  std::int64_t value = 0;
  std::vector<Reading> items;

  static Reading integer(std::int64_t v) { return {true, v, {}}; }
  static Reading list(std::vector<Reading> items) {
    return {false, 0, std::move(items)};
  }

  friend bool operator==(const Reading&, const Reading&) = default;
  // "[1,2]", "[[0,1]]", "[]", "-3".
  std::string to_string() const;
  static Reading parse(std::string_view text);
};

// The unique w with v |=_h^gt w, if any. gt must be ground: no type
// variables and every size a natural constant; otherwise nothing models.
std::optional<Reading> models(const Value& v, const Heap& h,
                              const SizedType& gt);

// Untyped structural reader: NULL reads as [], locations as lists.
// Throws EvalError on dangling or cyclic structure.
Reading read_value(const Value& v, const Heap& h);
Value build_value(const Reading& r, Heap& h);

class NonShapelyObservation : public Error {
 public:
  NonShapelyObservation(int level, std::set<std::int64_t> lengths);
  int level() const { return level_; }
  const std::set<std::int64_t>& lengths() const { return lengths_; }

 private:
  int level_;
  std::set<std::int64_t> lengths_;
};

struct LevelSize {
  bool known = false;
  std::int64_t length = 0;

  static LevelSize of(std::int64_t n) { return {true, n}; }
  static LevelSize incomplete() { return {}; }
  friend bool operator==(const LevelSize&, const LevelSize&) = default;
  std::string to_string() const;  // the length, or "?"
};

// Lengths of the lists at nesting levels 1..nesting. A level is Incomplete
// when no list exists at that depth. Throws NonShapelyObservation when two
// lists at one level differ in length.
std::vector<LevelSize> measure_sizes(const Value& v, const Heap& h,
                                     int nesting);

}  // namespace polysize

#endif  // POLYSIZE_VALUE_H
