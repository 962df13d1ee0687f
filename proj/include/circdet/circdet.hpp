#pragma once

#include "circdet/circulant.hpp"
#include "circdet/closed_forms.hpp"
#include "circdet/error.hpp"
#include "circdet/matrix.hpp"
#include "circdet/oracle.hpp"
#include "circdet/reduction.hpp"
#include "circdet/scalar.hpp"
#include "circdet/sequence.hpp"
