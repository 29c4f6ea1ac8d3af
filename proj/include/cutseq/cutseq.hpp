#pragma once

#include "cutseq/coherence.hpp"
#include "cutseq/farey.hpp"
#include "cutseq/generation.hpp"
#include "cutseq/geometry.hpp"
#include "cutseq/polygon.hpp"
#include "cutseq/q2.hpp"
#include "cutseq/tracer.hpp"
#include "cutseq/words.hpp"

namespace cutseq {

inline constexpr const char* kVersion = "0.1.0";

} // namespace cutseq
