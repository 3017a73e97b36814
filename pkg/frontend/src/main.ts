import { mountApp } from './app';

mountApp(document.getElementById('app')!);
