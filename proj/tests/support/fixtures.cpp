#include "fixtures.hpp"

namespace spinnet::testing {

SpinNetwork pair_fixture(int a, int b, int total) {
  return NetworkBuilder().edge("a", a).edge("b", b).edge("c", total).vertex("v", {"a", "b", "c"}).build();
}

SpinNetwork aligned_triple(int n) {
  return NetworkBuilder()
      .edge("x", n)
      .edge("y", n)
      .edge("z", n)
      .edge("m", 2 * n)
      .edge("src", 3 * n)
      .vertex("v1", {"x", "y", "m"})
      .vertex("v2", {"m", "z", "src"})
      .build();
}

SpinNetwork tripod(int n) {
  return NetworkBuilder().edge("x", n).edge("y", n).edge("z", n).vertex("v", {"x", "y", "z"}).build();
}

}  // namespace spinnet::testing
