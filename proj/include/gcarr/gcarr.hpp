#pragma once

#include <gcarr/arrangement.hpp>
#include <gcarr/claims.hpp>
#include <gcarr/coloring.hpp>
#include <gcarr/errors.hpp>
#include <gcarr/faces.hpp>
#include <gcarr/geometry.hpp>
#include <gcarr/io.hpp>
#include <gcarr/isomorphism.hpp>
#include <gcarr/svg.hpp>
