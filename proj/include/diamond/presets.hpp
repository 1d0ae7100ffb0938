#ifndef DIAMOND_PRESETS_HPP
#define DIAMOND_PRESETS_HPP

#include <memory>
#include <string>

#include "diamond/hecke.hpp"
#include "diamond/rewrite.hpp"

namespace diamond {

// A presentation together with the workspace that owns its parameters.
struct HeckeBundle {
  std::shared_ptr<Workspace> ws;
  HeckePresentation presentation;
};

struct WordBundle {
  std::shared_ptr<Workspace> ws;
  RewriteSystem system;
};

// Built-in Hecke presets.
HeckeBundle preset_coxeter();            // one color, ss = 1, no dots
HeckeBundle preset_modified_symmetric(); // symbolic alpha beta a b c d e
HeckeBundle preset_nilhecke();           // one color, Q[x] dots, Demazure
HeckeBundle preset_webster_sl2_skeleton();

// Built-in word-rewrite systems.
WordBundle preset_xyz();
WordBundle preset_coxeter_s3_words();
WordBundle preset_example_2_7();  // ss, tt, ststst -> 1

// The S4 Coxeter word system with a chosen orientation: braid_st false
// means sts -> tst, braid_tu false means tut -> utu, comm_su false means
// su -> us; true flips each. The order is built to match.
WordBundle preset_coxeter_s4(bool flip_st, bool flip_tu, bool flip_su);
inline WordBundle preset_coxeter_s4_naive() {
  return preset_coxeter_s4(false, false, false);
}

}  // namespace diamond

#endif
