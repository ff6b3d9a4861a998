#pragma once

#include "qrep/error.hpp"
#include "qrep/grid.hpp"
#include "qrep/kernels.hpp"
#include "qrep/operators.hpp"
#include "qrep/states.hpp"
#include "qrep/transforms.hpp"
#include "qrep/verify.hpp"
