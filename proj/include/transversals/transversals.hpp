#pragma once

#include "transversals/counting.hpp"
#include "transversals/enumeration.hpp"
#include "transversals/rooted_tree.hpp"
#include "transversals/transforms.hpp"
#include "transversals/verification.hpp"
