#pragma once

#include "convograph/classify.hpp"
#include "convograph/community.hpp"
#include "convograph/error.hpp"
#include "convograph/eval.hpp"
#include "convograph/graph.hpp"
#include "convograph/ingest.hpp"
#include "convograph/metrics.hpp"
#include "convograph/number_format.hpp"
#include "convograph/textprep.hpp"
