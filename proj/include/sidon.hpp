#pragma once

#include "sidon/error.hpp"
#include "sidon/config.hpp"
#include "sidon/integer.hpp"
#include "sidon/matrix.hpp"
#include "sidon/group.hpp"
#include "sidon/quotient.hpp"
#include "sidon/finite_field.hpp"
#include "sidon/geometry.hpp"
#include "sidon/sets.hpp"
#include "sidon/search.hpp"
#include "sidon/codes.hpp"
#include "sidon/verify.hpp"
#include "sidon/channel.hpp"
