#pragma once

#include "common/corpus.hpp"
#include "expzero/errors.hpp"
#include "expzero/parser.hpp"

namespace corpus {

/// The standard corpus: draws that parse to the intended height.
inline std::vector<Entry> standard(std::size_t count = 60) {
  return generate(
      [](const Entry& e) {
        try {
          return expzero::parse_exppoly(e.text).height() == e.height;
        } catch (const expzero::Error&) {
          return false;
        }
      },
      count);
}

}  // namespace corpus
