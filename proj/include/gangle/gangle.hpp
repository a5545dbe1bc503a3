#pragma once

#include "gangle/angles.hpp"
#include "gangle/errors.hpp"
#include "gangle/gram_projection.hpp"
#include "gangle/matrix.hpp"
#include "gangle/norm.hpp"
#include "gangle/scalar.hpp"
#include "gangle/semi_inner.hpp"
#include "gangle/space.hpp"
#include "gangle/sparse_vector.hpp"
