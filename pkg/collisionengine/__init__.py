#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""collisionengine simulates a qubit battery and Otto engine fuelled by random collisions."""

from collisionengine.version import __version__
