#pragma once

#define QPT_VERSION_MAJOR 0
#define QPT_VERSION_MINOR 1
#define QPT_VERSION_PATCH 0
#define QPT_VERSION "0.1.0"
