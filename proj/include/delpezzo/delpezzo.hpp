#pragma once

#include "delpezzo/cache.hpp"
#include "delpezzo/collection.hpp"
#include "delpezzo/cone.hpp"
#include "delpezzo/config.hpp"
#include "delpezzo/cylinder.hpp"
#include "delpezzo/divisor.hpp"
#include "delpezzo/error.hpp"
#include "delpezzo/linalg.hpp"
#include "delpezzo/report.hpp"
#include "delpezzo/surface.hpp"
#include "delpezzo/version.hpp"
