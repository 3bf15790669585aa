#pragma once

// Umbrella header: reference-relative compression with fast random access.

#include "rlzap/common.hpp"
#include "rlzap/packed_array.hpp"
#include "rlzap/dense_bitvector.hpp"
#include "rlzap/sparse_bitvector.hpp"
#include "rlzap/chunked_bitvector.hpp"
#include "rlzap/literal_counter.hpp"
#include "rlzap/literal_store.hpp"
#include "rlzap/alphabet.hpp"
#include "rlzap/suffix_array.hpp"
#include "rlzap/matcher.hpp"
#include "rlzap/parser.hpp"
#include "rlzap/archive.hpp"
#include "rlzap/baselines.hpp"
#include "rlzap/io.hpp"
