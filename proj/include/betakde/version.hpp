#pragma once

#define BETAKDE_VERSION "0.1.0"
