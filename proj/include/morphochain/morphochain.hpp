#pragma once

#include "morphochain/affixes.hpp"
#include "morphochain/candidates.hpp"
#include "morphochain/corpus.hpp"
#include "morphochain/embeddings.hpp"
#include "morphochain/error.hpp"
#include "morphochain/eval.hpp"
#include "morphochain/features.hpp"
#include "morphochain/inference.hpp"
#include "morphochain/lbfgs.hpp"
#include "morphochain/model.hpp"
#include "morphochain/model_io.hpp"
#include "morphochain/parallel.hpp"
#include "morphochain/utf8.hpp"
