#pragma once

#include "analysis.hpp"
#include "chaos_game.hpp"
#include "cloud.hpp"
#include "gallery.hpp"
#include "ifs.hpp"
#include "io.hpp"
#include "render.hpp"
#include "report.hpp"
#include "space.hpp"
