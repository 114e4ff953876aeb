#include "vcdlab/resource.hpp"

#include <cstdlib>
#include <string>

namespace vcdlab {

namespace {

template <typename T>
void read_env(const char* name, T& slot) {
  if (const char* v = std::getenv(name)) {
    try {
      slot = static_cast<T>(std::stoll(v));
    } catch (...) {
      // ignore malformed values, keep the default
    }
  }
}

Limits load_from_env() {
  Limits l;
  read_env("VCDLAB_WIDTH_UNIVERSE_CAP", l.width_universe_cap);
  read_env("VCDLAB_AUT_NODE_BUDGET", l.aut_node_budget);
  read_env("VCDLAB_GROUP_SIZE_CAP", l.group_size_cap);
  read_env("VCDLAB_DEF_TUPLE_CAP", l.def_tuple_cap);
  read_env("VCDLAB_QUANT_DEPTH_CAP", l.quantifier_depth_cap);
  read_env("VCDLAB_RANDOM_POSET_ATTEMPTS", l.random_poset_attempts);
  read_env("VCDLAB_HYPERCUBE_DIM_CAP", l.hypercube_dim_cap);
  return l;
}

}  // namespace

Limits& limits() {
  static Limits instance = load_from_env();
  return instance;
}

}  // namespace vcdlab
