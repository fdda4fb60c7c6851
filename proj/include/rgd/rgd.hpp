#pragma once

#include "rgd/augmented.hpp"
#include "rgd/biased.hpp"
#include "rgd/bigint.hpp"
#include "rgd/decompose.hpp"
#include "rgd/degseq.hpp"
#include "rgd/distribution.hpp"
#include "rgd/encode.hpp"
#include "rgd/explore.hpp"
#include "rgd/forest.hpp"
#include "rgd/graph.hpp"
#include "rgd/harness.hpp"
#include "rgd/linebreak.hpp"
#include "rgd/random.hpp"
#include "rgd/report.hpp"
#include "rgd/sample.hpp"
#include "rgd/stats.hpp"
#include "rgd/verify.hpp"
