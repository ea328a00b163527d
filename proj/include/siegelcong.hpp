#pragma once

#include "siegelcong/error.hpp"
#include "siegelcong/rational.hpp"
#include "siegelcong/bernoulli.hpp"
#include "siegelcong/characters.hpp"
#include "siegelcong/quadforms.hpp"
#include "siegelcong/qexp.hpp"
#include "siegelcong/ntt.hpp"
#include "siegelcong/eisenstein.hpp"
#include "siegelcong/certificate.hpp"
#include "siegelcong/lattices.hpp"
#include "siegelcong/verify.hpp"
