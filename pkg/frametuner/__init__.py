# ------------------------------------------------------------------------------
# This file is part of frametuner.
#
# Distributed under the terms of the GNU General Public License,
# either version 3 of the License, or (at your option) any later version.
# See LICENSE.txt for more info.
#
# You should have received a copy of the GNU General Public License
# along with frametuner. If not, see <http://www.gnu.org/licenses/>.
# ------------------------------------------------------------------------------


from .frame import Frame, analyze, harmonic_frame, random_frame
from .descent import DescentConfig, DescentTrace, run
from .partition import Partition, op_threshold, is_epsilon_op, jump_to_op
from .structured import FilterBank, GaborSystem
from .autotune import TuneReport, tune, tune_coprime
from .constants import Field, TerminationReason, Outcome, ExitCode

# Keep in sync with setup.py
__version__ = '1.0.0'
