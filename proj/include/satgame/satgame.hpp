#ifndef SATGAME_SATGAME_HPP
#define SATGAME_SATGAME_HPP

#include "satgame/errors.hpp"
#include "satgame/profile_space.hpp"
#include "satgame/game.hpp"
#include "satgame/mixed.hpp"
#include "satgame/ese.hpp"
#include "satgame/rng.hpp"
#include "satgame/learning.hpp"
#include "satgame/interference.hpp"
#include "satgame/io.hpp"

#endif  // SATGAME_SATGAME_HPP
