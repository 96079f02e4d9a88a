#pragma once

// The full chain normalize -> decompose -> variety -> reduce -> rotundity
// -> solve, as one JSON document.

#include "expzero/json_io.hpp"

namespace expzero {

struct PipelineConfig {
  ReductionConfig reduction;
  RotundityConfig rotundity;
  RootConfig root;
};

struct PipelineResult {
  Json document;
  bool root_not_found = false;
};

PipelineResult run_pipeline(const ExpPoly& p, const PipelineConfig& config = {});

}  // namespace expzero
