#pragma once

#include "spinnet/core/network.hpp"

namespace spinnet::testing {

// Two label-1 ends meeting a third end of label `total` at one vertex.
SpinNetwork pair_fixture(int a, int b, int total);
inline SpinNetwork singlet_fixture() { return pair_fixture(1, 1, 0); }
inline SpinNetwork triplet_fixture() { return pair_fixture(1, 1, 2); }

// Ends x, y, z of label n all stretched into one source end of label 3n.
SpinNetwork aligned_triple(int n);
// Ends x, y, z of label n meeting at one vertex.
SpinNetwork tripod(int n);

}  // namespace spinnet::testing
