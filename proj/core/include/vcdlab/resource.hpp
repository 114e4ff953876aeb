#pragma once

#include <cstdint>

namespace vcdlab {

/// Process-wide resource caps. Defaults are generous for desk-scale inputs;
/// each can be overridden through the matching VCDLAB_* environment variable
/// (read once at first use).
struct Limits {
  int width_universe_cap = 512;          // VCDLAB_WIDTH_UNIVERSE_CAP
  int64_t aut_node_budget = 20'000'000;  // VCDLAB_AUT_NODE_BUDGET
  int64_t group_size_cap = 1'000'000;    // VCDLAB_GROUP_SIZE_CAP
  int64_t def_tuple_cap = 1'000'000;     // VCDLAB_DEF_TUPLE_CAP
  int quantifier_depth_cap = 12;         // VCDLAB_QUANT_DEPTH_CAP
  int random_poset_attempts = 2000;      // VCDLAB_RANDOM_POSET_ATTEMPTS
  int hypercube_dim_cap = 10;            // VCDLAB_HYPERCUBE_DIM_CAP
};

/// Mutable singleton; tests may tighten caps to exercise abort paths.
Limits& limits();

}  // namespace vcdlab
