#ifndef POLYSIZE_OVERLOAD_H
#define POLYSIZE_OVERLOAD_H

namespace polysize {

// Visitor built from lambdas for std::visit.
template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

}  // namespace polysize

#endif  // POLYSIZE_OVERLOAD_H
