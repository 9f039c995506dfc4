#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Setup for aodkit.

"""

from os import path

from setuptools import setup

# read the contents of your README file
this_directory = path.abspath(path.dirname(__file__))
with open(path.join(this_directory, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

setup(name='aodkit',
      version='0.1.0',
      description='Amicable orthogonal designs and orthogonal space-time block codes in exact arithmetic.',
      license='MIT',
      packages=['aodkit'],
      python_requires='>=3.8',
      install_requires=['natsort', 'numpy', 'sympy'],
      extras_require={'test': ['pytest', 'hypothesis']},
      include_package_data=True,
      zip_safe=False,
      long_description=long_description,
      long_description_content_type='text/markdown',
      entry_points = {
        'console_scripts': ['aodkit=aodkit.__main__:main'],
        })
