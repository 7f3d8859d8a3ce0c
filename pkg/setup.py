"""
Copyright 2026, The RISLocPython developers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
from setuptools import setup
from os import path
import configparser

config = configparser.ConfigParser()
config.read('RISLocPython/conf/RISLocPython.conf')
VERSION = config['SYSTEM']['version']
here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='RISLocPython',
    version=VERSION,
    description='Fisher information and position error bounds for RIS-aided asynchronous near-field localization',
    long_description=long_description,
    long_description_content_type='text/markdown',
    author='The RISLocPython developers',
    keywords=['reconfigurable intelligent surface localization near-field fisher information crlb peb'],
    tests_require=['pytest', ],
    setup_requires=['pytest-runner', ],
    python_requires='>=3.10',
    packages=['RISLocPython'],
    package_dir={'RISLocPython': 'RISLocPython'},
    package_data={'RISLocPython': ['conf/RISLocPython.conf']},
    install_requires=[
        'numpy>=1.22',
        'requests>=2.20',
        'validator-collection>=1.2',
      ],
    entry_points={
        'console_scripts': ['risloc=RISLocPython.cli:main'],
    },
    classifiers=['Development Status :: 4 - Beta',
                   'Intended Audience :: Science/Research',
                   'Intended Audience :: Telecommunications Industry',
                   'License :: OSI Approved :: Apache Software License',
                   'Programming Language :: Python :: 3 :: Only',
                   'Topic :: Scientific/Engineering',
                 ],
)
