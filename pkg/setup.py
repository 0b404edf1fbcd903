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


from setuptools import setup, find_packages

# Keep in sync with frametuner/__init__.py
__version = '1.0.0'


long_description = """ Python library and command line tool to tune finite
unit norm frames towards unit norm tight frames. Every frame vector follows
the great circle of its projected frame potential gradient; frames that come
close to splitting into orthogonal pieces jump to an exact split and are
tuned piecewise. Gabor systems and filter banks are tuned through their
generators only. """

classifiers = [
    # How mature is this project? Common values are
    #   3 - Alpha
    #   4 - Beta
    #   5 - Production/Stable
    'Development Status :: 3 - Alpha',

    # Indicate who your project is intended for
    'Intended Audience :: Science/Research',
    'Topic :: Scientific/Engineering',
    'Topic :: Scientific/Engineering :: Mathematics',
    'Topic :: Software Development :: Libraries',

    # Pick your license as you wish (should match "license" above)
    'License :: OSI Approved :: GNU General Public License v3 or later ' + \
    '(GPLv3+)',

    'Programming Language :: Python :: 3',
]

setup(
    name='frametuner',
    version=__version,
    packages=find_packages(exclude=['tests']),
    entry_points={
        'console_scripts': ['frametuner = frametuner.cli:main'],
    },
    keywords='frames tight-frames frame-potential gradient-descent gabor',
    license='GPL',
    description='Gradient descent tuning of unit norm tight frames',
    long_description=long_description,
    requires=['setuptools (>=1.1)'],
    install_requires=['numpy>=1.17', 'pandas>=1.0'],
    test_suite='tests',
    classifiers=classifiers
)
