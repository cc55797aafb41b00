default_app_config = 'runs.apps.RunsConfig'
