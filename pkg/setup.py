# -*- coding: utf-8 -*-
from setuptools import setup

package_dir = \
{'': 'python'}

packages = \
['oim_lab',
 'oim_lab.bandit',
 'oim_lab.client',
 'oim_lab.client.commands',
 'oim_lab.datamodel',
 'oim_lab.datamodel.types',
 'oim_lab.diffusion',
 'oim_lab.gom',
 'oim_lab.graph',
 'oim_lab.harness',
 'oim_lab.spread',
 'oim_lab.utils',
 'oim_lab.utils.modeling',
 'oim_lab.wcim']

install_requires = \
['networkx', 'numpy', 'pandas', 'pyyaml', 'typing-extensions']

entry_points = \
{'console_scripts': ['oimctl = oim_lab.client.main:main']}

setup_kwargs = {
    'name': 'oim-lab',
    'version': '0.3.0',
    'description': 'Online influence maximization lab - LT-LinUCB and OIM-ETC on small graphs with exact spread evaluation',
    'long_description': open('README.md', encoding='utf8').read(),
    'long_description_content_type': 'text/markdown',
    'author': 'oim-lab developers',
    'package_dir': package_dir,
    'packages': packages,
    'install_requires': install_requires,
    'entry_points': entry_points,
    'python_requires': '>=3.8,<4.0',
}


setup(**setup_kwargs)
