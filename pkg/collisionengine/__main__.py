#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

import sys
from collisionengine.cli import main

sys.exit(main())
