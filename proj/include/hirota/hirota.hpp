#pragma once

#include "hirota/core.hpp"
#include "hirota/error.hpp"
#include "hirota/fft.hpp"
#include "hirota/laxpair.hpp"
#include "hirota/linalg.hpp"
#include "hirota/nsoliton.hpp"
#include "hirota/propagator.hpp"
#include "hirota/residual.hpp"
#include "hirota/rh.hpp"
#include "hirota/stencil.hpp"
